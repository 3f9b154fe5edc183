#ifndef SPECNP_SERIALIZATION_HPP
#define SPECNP_SERIALIZATION_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include <specnp/pipeline.hpp>

namespace specnp::io {

using json = nlohmann::json;

/// Complex numbers are [re, im]; a bare number is read as real. Matrices are
/// row-major arrays of rows. Every parse failure throws Error(Schema).
json to_json(cplx z);
cplx complex_from_json(const json& j);
json to_json(const CMat& m);
CMat matrix_from_json(const json& j);

struct ProblemFile {
  std::optional<SpectralProblem> spectral;
  GammaProblem gamma;
  std::optional<ZGrid> zgrid;
};
/// {"nodes": [...], "targets": [2x2, ...]} or {"nodes": [...], "values":
/// [[s_re, s_im, p_re, p_im], ...]}, with an optional "zgrid" of three points.
/// Gamma values are filled from the targets when those are given and lie in
/// Gamma.
ProblemFile parse_problem(const json& j);
json problem_to_json(const SpectralProblem& sp);
json problem_to_json(const GammaProblem& gp);
ZGrid parse_zgrid(const json& j);

/// Keys mirror SolverConfig; unknown keys are rejected.
SolverConfig parse_config(const json& j);
json to_json(const SolverConfig& cfg);

json to_json(const Realization& r);
Realization realization_from_json(const json& j);
json to_json(const WitnessPair& w);
WitnessPair witness_from_json(const json& j);
json to_json(const CertificateReport& r);
json to_json(const InterpolantCheck& c);

json to_json(const Polynomial& p);
json to_json(const ScalarRational& r);
json to_json(const RationalMatrix& m);

json report_json(const SolveOutcome& out);
json report_json(const MuDemoResult& res);

/// Throws Error(Schema) if the file cannot be read or is not valid JSON.
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace specnp::io

#endif  // SPECNP_SERIALIZATION_HPP
