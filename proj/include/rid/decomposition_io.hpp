#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "rid/errors.hpp"
#include "rid/interpolative.hpp"
#include "rid/matrix_io.hpp"

namespace rid {

struct DecompositionFiles {
  std::filesystem::path b;
  std::filesystem::path p;
  std::filesystem::path sidecar;
};

/// "<prefix>_b.ridm", "<prefix>_p.ridm", "<prefix>.json"
inline DecompositionFiles decomposition_files(const std::string& prefix) {
  return {prefix + "_b.ridm", prefix + "_p.ridm", prefix + ".json"};
}

inline nlohmann::json diagnostics_json(const IdDiagnostics& d) {
  nlohmann::json j;
  j["phase_seconds"] = {{"randomize_fft", d.phase_seconds.randomize_fft},
                        {"gram_schmidt", d.phase_seconds.gram_schmidt},
                        {"factor_r", d.phase_seconds.factor_r},
                        {"total", d.phase_seconds.total}};
  j["err_spectral"] = d.err_spectral ? nlohmann::json(*d.err_spectral) : nullptr;
  j["err_frobenius"] = d.err_frobenius ? nlohmann::json(*d.err_frobenius) : nullptr;
  j["sketch_rank_retries"] = d.sketch_rank_retries;
  j["bound_params"] = {{"epsilon", d.bound_params.epsilon},
                       {"sigma_kplus1_estimate", d.bound_params.sigma_kplus1_estimate},
                       {"bound_value", d.bound_params.bound_value}};
  return j;
}

/// Writes b and p in the RIDM format plus a JSON sidecar with pivots,
/// dimensions, seed and diagnostics.
inline DecompositionFiles save_decomposition(const std::string& prefix, const IdResult& result,
                                             std::size_t m, std::size_t n, std::size_t l,
                                             std::uint64_t seed) {
  const DecompositionFiles files = decomposition_files(prefix);
  write_matrix(files.b, result.b);
  write_matrix(files.p, result.p);

  nlohmann::json j;
  j["m"] = m;
  j["n"] = n;
  j["k"] = result.pivots.size();
  j["l"] = l;
  j["seed"] = seed;
  j["pivots"] = result.pivots;
  j["b_file"] = files.b.filename().string();
  j["p_file"] = files.p.filename().string();
  j["diagnostics"] = diagnostics_json(result.diagnostics);

  std::ofstream os(files.sidecar, std::ios::trunc);
  if (!os) throw IoError("cannot open " + files.sidecar.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("failed writing " + files.sidecar.string());
  return files;
}

inline nlohmann::json read_sidecar(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("malformed sidecar JSON: ") + e.what());
  }
}

}  // namespace rid
