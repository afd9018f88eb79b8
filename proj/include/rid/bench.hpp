#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rid/errors.hpp"
#include "rid/interpolative.hpp"
#include "rid/matrix.hpp"
#include "rid/random.hpp"

namespace rid::bench {

enum class ReportFormat { csv, json };

struct BenchConfig {
  std::size_t m = 1024;
  std::size_t n = 1024;
  std::size_t k = 64;
  std::optional<std::size_t> l;  // default 2k
  std::vector<std::uint64_t> seeds{1};
  std::vector<int> worker_counts{1};
  int repeats = 5;
  double epsilon = 1e-20;
  bool compute_spectral_error = false;
  std::filesystem::path output;
  ReportFormat format = ReportFormat::csv;

  std::size_t sketch_rows() const { return l.value_or(2 * k); }
};

inline void validate(const BenchConfig& c) {
  detail::require(is_power_of_two(c.m), "bench: m must be a power of two");
  detail::require(c.k >= 1 && c.k <= std::min(c.m, c.n), "bench: need 1 <= k <= min(m, n)");
  detail::require(c.sketch_rows() >= c.k && c.sketch_rows() <= c.m, "bench: need k <= l <= m");
  detail::require(!c.worker_counts.empty(), "bench: worker_counts must be nonempty");
  for (int w : c.worker_counts) detail::require(w >= 1, "bench: worker counts must be >= 1");
  detail::require(!c.seeds.empty(), "bench: seeds must be nonempty");
  detail::require(c.repeats >= 1, "bench: repeats must be >= 1");
  detail::require(c.epsilon > 0.0 && c.epsilon <= 1.0, "bench: epsilon must lie in (0, 1]");
}

struct PhaseTimes {
  double fft = 0.0;
  double gs = 0.0;
  double factor_r = 0.0;
  double total = 0.0;
};

struct BenchRecord {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  int repeats = 1;
  PhaseTimes seconds;
  PhaseTimes speedup;
  int baseline_workers = 1;
  std::optional<double> err_spectral;
  double err_frobenius = 0.0;
  double bound_value = 0.0;
  bool bound_satisfied = false;
};

/// A = B0 * P0 with complex Gaussian factors of inner dimension k.
inline DenseMatrix generate_low_rank(std::size_t m, std::size_t n, std::size_t k,
                                     const RngState& rng, Workers workers = {}) {
  detail::require(k >= 1 && k <= std::min(m, n), "generate_low_rank: need 1 <= k <= min(m, n)");
  const DenseMatrix b0 = gaussian_complex_matrix(m, k, rng.split(1), workers);
  const DenseMatrix p0 = gaussian_complex_matrix(k, n, rng.split(2), workers);
  return matmul(b0, p0, workers);
}

/// Runs the sweep seeds x worker_counts. Each cell gets one discarded warm-up
/// run and then `repeats` timed runs; every phase reports its minimum.
/// Speed-ups are relative to the smallest worker count in the sweep.
inline std::vector<BenchRecord> run_benchmark(const BenchConfig& config,
                                              std::ostream* log = nullptr) {
  validate(config);
  const unsigned hw = std::thread::hardware_concurrency();
  if (log != nullptr && hw != 0) {
    for (int w : config.worker_counts)
      if (static_cast<unsigned>(w) > hw)
        *log << "warning: " << w << " workers requested but only " << hw
             << " hardware threads are available; timings will be oversubscribed\n";
  }
  const int baseline =
      *std::min_element(config.worker_counts.begin(), config.worker_counts.end());

  std::vector<BenchRecord> records;
  for (std::uint64_t seed : config.seeds) {
    const RngState rng{seed, 0};
    const DenseMatrix a = generate_low_rank(config.m, config.n, config.k, rng.split(0x41),
                                            Workers{*std::max_element(config.worker_counts.begin(),
                                                                      config.worker_counts.end())});
    const std::size_t first = records.size();
    for (int w : config.worker_counts) {
      IdOptions opts;
      opts.workers = Workers{w};
      opts.epsilon = config.epsilon;
      const RngState id_rng = rng.split(0x4944);

      (void)randomized_id(a, config.k, config.sketch_rows(), id_rng, opts);
      constexpr double inf = std::numeric_limits<double>::infinity();
      PhaseTimes best{inf, inf, inf, inf};
      std::optional<IdResult> kept;
      for (int r = 0; r < config.repeats; ++r) {
        IdResult res = randomized_id(a, config.k, config.sketch_rows(), id_rng, opts);
        const PhaseSeconds& ps = res.diagnostics.phase_seconds;
        best.fft = std::min(best.fft, ps.randomize_fft);
        best.gs = std::min(best.gs, ps.gram_schmidt);
        best.factor_r = std::min(best.factor_r, ps.factor_r);
        best.total = std::min(best.total, ps.total);
        if (!kept) kept = std::move(res);
      }

      BenchRecord rec;
      rec.m = config.m;
      rec.n = config.n;
      rec.k = config.k;
      rec.l = config.sketch_rows();
      rec.seed = seed;
      rec.workers = w;
      rec.repeats = config.repeats;
      rec.seconds = best;
      rec.baseline_workers = baseline;
      rec.err_frobenius = residual_frobenius_norm(a, kept->b, kept->p, opts.workers);
      if (config.compute_spectral_error)
        rec.err_spectral = residual_spectral_norm(a, kept->b, kept->p, rng.split(0x45));
      rec.bound_value = kept->diagnostics.bound_params.bound_value;
      // ||.||_2 <= ||.||_F, so the Frobenius error certifies the bound when
      // the spectral estimate was not requested.
      rec.bound_satisfied = rec.err_spectral.value_or(rec.err_frobenius) <= rec.bound_value;
      records.push_back(rec);
      if (log != nullptr)
        *log << "seed=" << seed << " workers=" << w << " total=" << best.total << "s\n";
    }

    const BenchRecord* base = nullptr;
    for (std::size_t i = first; i < records.size(); ++i)
      if (records[i].workers == baseline && base == nullptr) base = &records[i];
    for (std::size_t i = first; i < records.size(); ++i) {
      BenchRecord& rec = records[i];
      auto ratio = [](double b, double t) { return t > 0.0 ? b / t : 0.0; };
      rec.speedup.fft = ratio(base->seconds.fft, rec.seconds.fft);
      rec.speedup.gs = ratio(base->seconds.gs, rec.seconds.gs);
      rec.speedup.factor_r = ratio(base->seconds.factor_r, rec.seconds.factor_r);
      rec.speedup.total = ratio(base->seconds.total, rec.seconds.total);
    }
  }
  return records;
}

inline constexpr const char* kCsvHeader =
    "m,n,k,l,seed,workers,repeats,t_fft,t_gs,t_factor_r,t_total,speedup_fft,speedup_gs,"
    "speedup_factor_r,speedup_total,err_frobenius,err_spectral,bound_value,bound_satisfied";

namespace format_detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string fmt_time(double v) { return fmt("%.6g", v); }
inline std::string fmt_err(double v) { return fmt("%.2e", v); }

}  // namespace format_detail

inline std::string format_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    using format_detail::fmt_err;
    using format_detail::fmt_time;
    os << r.m << ',' << r.n << ',' << r.k << ',' << r.l << ',' << r.seed << ',' << r.workers << ','
       << r.repeats << ',' << fmt_time(r.seconds.fft) << ',' << fmt_time(r.seconds.gs) << ','
       << fmt_time(r.seconds.factor_r) << ',' << fmt_time(r.seconds.total) << ','
       << fmt_time(r.speedup.fft) << ',' << fmt_time(r.speedup.gs) << ','
       << fmt_time(r.speedup.factor_r) << ',' << fmt_time(r.speedup.total) << ','
       << fmt_err(r.err_frobenius) << ',' << (r.err_spectral ? fmt_err(*r.err_spectral) : "")
       << ',' << fmt_err(r.bound_value) << ',' << (r.bound_satisfied ? "true" : "false") << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const std::vector<BenchRecord>& records) {
  auto num = [](const std::string& s) { return std::stod(s); };
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRecord& r : records) {
    using format_detail::fmt_err;
    using format_detail::fmt_time;
    nlohmann::json j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["k"] = r.k;
    j["l"] = r.l;
    j["seed"] = r.seed;
    j["workers"] = r.workers;
    j["repeats"] = r.repeats;
    j["baseline_workers"] = r.baseline_workers;
    j["t_fft"] = num(fmt_time(r.seconds.fft));
    j["t_gs"] = num(fmt_time(r.seconds.gs));
    j["t_factor_r"] = num(fmt_time(r.seconds.factor_r));
    j["t_total"] = num(fmt_time(r.seconds.total));
    j["speedup_fft"] = num(fmt_time(r.speedup.fft));
    j["speedup_gs"] = num(fmt_time(r.speedup.gs));
    j["speedup_factor_r"] = num(fmt_time(r.speedup.factor_r));
    j["speedup_total"] = num(fmt_time(r.speedup.total));
    j["err_frobenius"] = num(fmt_err(r.err_frobenius));
    j["err_spectral"] = r.err_spectral ? nlohmann::json(num(fmt_err(*r.err_spectral))) : nullptr;
    j["bound_value"] = num(fmt_err(r.bound_value));
    j["bound_satisfied"] = r.bound_satisfied;
    arr.push_back(std::move(j));
  }
  return arr;
}

/// Parses text produced by format_csv.
inline std::vector<BenchRecord> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw IoError("CSV header mismatch");
  std::vector<BenchRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 19) throw IoError("CSV row has " + std::to_string(f.size()) + " fields");
    BenchRecord r;
    r.m = std::stoull(f[0]);
    r.n = std::stoull(f[1]);
    r.k = std::stoull(f[2]);
    r.l = std::stoull(f[3]);
    r.seed = std::stoull(f[4]);
    r.workers = std::stoi(f[5]);
    r.repeats = std::stoi(f[6]);
    r.seconds = {std::stod(f[7]), std::stod(f[8]), std::stod(f[9]), std::stod(f[10])};
    r.speedup = {std::stod(f[11]), std::stod(f[12]), std::stod(f[13]), std::stod(f[14])};
    r.err_frobenius = std::stod(f[15]);
    if (!f[16].empty()) r.err_spectral = std::stod(f[16]);
    r.bound_value = std::stod(f[17]);
    if (f[18] != "true" && f[18] != "false") throw IoError("bad bound_satisfied field");
    r.bound_satisfied = f[18] == "true";
    out.push_back(r);
  }
  return out;
}

/// Writes records as CSV (fixed header) or a JSON array. Nothing is created
/// when `records` is empty.
inline void emit_report(const std::vector<BenchRecord>& records, ReportFormat format,
                        const std::filesystem::path& path) {
  detail::require(!records.empty(), "emit_report: no records");
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  if (format == ReportFormat::csv)
    os << format_csv(records);
  else
    os << to_json(records).dump(2) << '\n';
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace rid::bench
