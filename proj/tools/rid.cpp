// rid: command-line front end for the randomized interpolative decomposition.
//
//   rid bench      sweep (seeds x worker counts), per-phase timings -> CSV/JSON
//   rid decompose  factor a RIDM matrix file into <prefix>_b/_p.ridm + <prefix>.json
//   rid verify     report ||A - BP|| and the probabilistic error bound
//   rid generate   write a Gaussian low-rank test matrix

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rid/rid.hpp"

namespace {

constexpr int kExitContract = 1;
constexpr int kExitIo = 2;

struct BenchArgs {
  std::size_t m = 1024, n = 1024, k = 64, l = 0;
  std::vector<std::uint64_t> seeds{1};
  std::vector<int> workers{1};
  int repeats = 5;
  bool spectral = false;
  double epsilon = 1e-20;
  std::string out = "results.csv";
  std::string format = "csv";
};

struct DecomposeArgs {
  std::string in;
  std::size_t k = 0, l = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string prefix = "fac";
  bool errors = false;
};

struct VerifyArgs {
  std::string in, b, p;
  double epsilon = 1e-20;
  double sigma = 0.0;
  double delta = 1e-16;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct GenerateArgs {
  std::size_t m = 256, n = 256, k = 16;
  std::uint64_t seed = 1;
  std::string out;
};

int run_bench(const BenchArgs& args) {
  rid::bench::BenchConfig cfg;
  cfg.m = args.m;
  cfg.n = args.n;
  cfg.k = args.k;
  if (args.l != 0) cfg.l = args.l;
  cfg.seeds = args.seeds;
  cfg.worker_counts = args.workers;
  cfg.repeats = args.repeats;
  cfg.epsilon = args.epsilon;
  cfg.compute_spectral_error = args.spectral;
  cfg.output = args.out;
  cfg.format = args.format == "json" ? rid::bench::ReportFormat::json
                                     : rid::bench::ReportFormat::csv;
  const auto records = rid::bench::run_benchmark(cfg, &std::cerr);
  rid::bench::emit_report(records, cfg.format, cfg.output);
  std::cout << "wrote " << records.size() << " records to " << cfg.output.string() << '\n';
  return 0;
}

int run_decompose(const DecomposeArgs& args) {
  const rid::DenseMatrix a = rid::read_matrix(args.in);
  rid::IdOptions opts;
  opts.workers = rid::Workers{args.workers};
  opts.compute_errors = args.errors;
  opts.spectral_error = args.errors;
  const std::size_t l = args.l != 0 ? args.l : 2 * args.k;
  const rid::IdResult res = rid::randomized_id(a, args.k, l, rid::RngState{args.seed, 0}, opts);
  const auto files = rid::save_decomposition(args.prefix, res, a.rows(), a.cols(), l, args.seed);
  const auto& ps = res.diagnostics.phase_seconds;
  std::cout << "m=" << a.rows() << " n=" << a.cols() << " k=" << args.k << " l=" << l << '\n'
            << "t_fft=" << ps.randomize_fft << " t_gs=" << ps.gram_schmidt
            << " t_factor_r=" << ps.factor_r << " t_total=" << ps.total << '\n'
            << "wrote " << files.b.string() << ' ' << files.p.string() << ' '
            << files.sidecar.string() << '\n';
  return 0;
}

int run_verify(const VerifyArgs& args) {
  const rid::DenseMatrix a = rid::read_matrix(args.in);
  const rid::DenseMatrix b = rid::read_matrix(args.b);
  const rid::DenseMatrix p = rid::read_matrix(args.p);
  const auto err = rid::reconstruction_error(a, b, p, rid::RngState{args.seed, 0x7665},
                                             rid::Workers{args.workers});
  const double m = static_cast<double>(a.rows());
  const double n = static_cast<double>(a.cols());
  const double k = static_cast<double>(b.cols());
  const double sigma = args.sigma > 0.0 ? args.sigma
                                        : rid::sigma_estimate_noise_floor(m, n, args.delta);
  const double bound = rid::error_bound(m, n, k, args.epsilon, sigma);
  std::printf("m=%zu n=%zu k=%zu\n", a.rows(), a.cols(), b.cols());
  std::printf("err_frobenius=%.3e\nerr_spectral=%.3e\n", err.frobenius, err.spectral);
  std::printf("epsilon=%.3e\nsigma_kplus1=%.3e\nbound_value=%.3e\n", args.epsilon, sigma, bound);
  std::printf("bound_satisfied=%s\n", err.spectral <= bound ? "true" : "false");
  return 0;
}

int run_generate(const GenerateArgs& args) {
  const auto a = rid::bench::generate_low_rank(args.m, args.n, args.k, rid::RngState{args.seed, 0});
  rid::write_matrix(args.out, a);
  std::cout << "wrote " << args.m << "x" << args.n << " rank-" << args.k << " matrix to "
            << args.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized interpolative decomposition toolkit"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the ID phases over a parameter sweep");
  bench_cmd->add_option("--m", bench.m, "Rows (power of two)")->required();
  bench_cmd->add_option("--n", bench.n, "Columns")->required();
  bench_cmd->add_option("--k", bench.k, "Target rank")->required();
  bench_cmd->add_option("--l", bench.l, "Sketch rows (default 2k)");
  bench_cmd->add_option("--seeds", bench.seeds, "Comma-separated seeds")->delimiter(',');
  bench_cmd->add_option("--workers", bench.workers, "Comma-separated worker counts")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Timed repeats per cell (min is reported)");
  bench_cmd->add_flag("--spectral-error", bench.spectral, "Estimate ||A-BP||_2 as well");
  bench_cmd->add_option("--epsilon", bench.epsilon, "Failure probability for the bound");
  bench_cmd->add_option("--out", bench.out, "Output file");
  bench_cmd->add_option("--format", bench.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Compute an ID of a RIDM matrix file");
  dec_cmd->add_option("--in", dec.in, "Input matrix (.ridm)")->required();
  dec_cmd->add_option("--k", dec.k, "Target rank")->required();
  dec_cmd->add_option("--l", dec.l, "Sketch rows (default 2k)");
  dec_cmd->add_option("--seed", dec.seed, "Random seed");
  dec_cmd->add_option("--workers", dec.workers, "Worker count");
  dec_cmd->add_option("--out-prefix", dec.prefix, "Output prefix");
  dec_cmd->add_flag("--errors", dec.errors, "Record reconstruction errors in the sidecar");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check ||A - BP|| against the error bound");
  ver_cmd->add_option("--in", ver.in, "Original matrix (.ridm)")->required();
  ver_cmd->add_option("--b", ver.b, "Basis factor B (.ridm)")->required();
  ver_cmd->add_option("--p", ver.p, "Interpolation factor P (.ridm)")->required();
  ver_cmd->add_option("--epsilon", ver.epsilon, "Failure probability for the bound");
  ver_cmd->add_option("--sigma", ver.sigma, "sigma_{k+1} (default: rounding noise floor)");
  ver_cmd->add_option("--delta", ver.delta, "Rounding level for the noise-floor estimate");
  ver_cmd->add_option("--seed", ver.seed, "Seed for the power-iteration start vector");
  ver_cmd->add_option("--workers", ver.workers, "Worker count");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a Gaussian low-rank test matrix");
  gen_cmd->add_option("--m", gen.m, "Rows")->required();
  gen_cmd->add_option("--n", gen.n, "Columns")->required();
  gen_cmd->add_option("--k", gen.k, "Rank")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output matrix (.ridm)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitContract;
  }

  try {
    if (*bench_cmd) return run_bench(bench);
    if (*dec_cmd) return run_decompose(dec);
    if (*ver_cmd) return run_verify(ver);
    if (*gen_cmd) return run_generate(gen);
  } catch (const rid::IoError& e) {
    std::cerr << "rid: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "rid: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitContract;
}
