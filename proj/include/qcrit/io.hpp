// io.hpp
// Result, state and report documents (JSON / CSV / text table).

#pragma once

#include "qcrit/enumerator.hpp"
#include "qcrit/quantum_verify.hpp"
#include "qcrit/state_builder.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcrit {

class Malformed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { table, json, csv };

Format parse_format(std::string_view name);

std::string beta_string(const CanonicalBeta& beta);

nlohmann::ordered_json to_json(const CriticalPoint& point);
nlohmann::ordered_json results_to_json(int qubits, const std::vector<CriticalPoint>& points);

/// Points rendered in the chosen format; JSON output ends with a newline.
std::string format_points(int qubits, const std::vector<CriticalPoint>& points, Format format);

/// Candidate beta vectors (no witnesses) in the chosen format.
std::string format_candidates(int qubits, const std::vector<CanonicalBeta>& betas, Format format);

struct ResultsDocument {
  int qubits = 0;
  std::vector<CanonicalBeta> betas;
};

/// Parses a results document. Throws Malformed.
ResultsDocument parse_results(std::string_view text);

struct StateMeta {
  std::optional<CanonicalBeta> beta;
  std::optional<Rational> entropy;
  std::string route;
};

nlohmann::ordered_json state_to_json(const StateVector& state, const StateMeta& meta = {});

struct StateDocument {
  StateVector state;
  StateMeta meta;
};

/// Parses a state document; rejects a norm differing from 1 by more than
/// `norm_tolerance`. Throws Malformed.
StateDocument parse_state(std::string_view text, double norm_tolerance = 1e-9);

nlohmann::ordered_json report_to_json(const VerificationReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcrit
