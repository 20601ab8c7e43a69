#include "qcrit/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qcrit {

using json = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string beta_string(const CanonicalBeta& beta) {
  std::string s = "(";
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (i > 0) s += ", ";
    s += beta[i].to_string();
  }
  return s + ")";
}

namespace {

json beta_json(const CanonicalBeta& beta) {
  json arr = json::array();
  for (const auto& c : beta.components) arr.push_back(c.to_string());
  return arr;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += c + 1 < row.size() ? pad(row[c], width[c] + 2) : row[c];
    out += line + "\n";
  }
  return out;
}

std::string joined(const CanonicalBeta& beta) {
  std::string s;
  for (std::size_t i = 0; i < beta.size(); ++i) s += (i > 0 ? ";" : "") + beta[i].to_string();
  return s;
}

[[noreturn]] void malformed(const std::string& what) { throw Malformed(what); }

json parse_json(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) malformed("empty input");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

int parse_qubits(const json& doc) {
  if (!doc.is_object() || !doc.contains("qubits") || !doc["qubits"].is_number_integer()) malformed("missing integer 'qubits'");
  const int qubits = doc["qubits"].get<int>();
  if (qubits < 1 || qubits > kMaxQubits) malformed("qubit count out of range");
  return qubits;
}

CanonicalBeta parse_beta(const json& arr, int qubits) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != qubits) malformed("beta must be an array of " + std::to_string(qubits) + " rationals");
  RationalVector v(qubits);
  for (int i = 0; i < qubits; ++i) {
    const auto& x = arr[static_cast<std::size_t>(i)];
    if (!x.is_string()) malformed("beta components must be strings like \"1/6\"");
    try {
      v(i) = Rational::parse(x.get<std::string>());
    } catch (const std::invalid_argument& e) {
      malformed(e.what());
    }
  }
  return canonicalize(v);
}

}  // namespace

json to_json(const CriticalPoint& point) {
  json j;
  j["beta"] = beta_json(point.beta);
  j["norm_sq"] = point.norm_sq.to_string();
  j["entropy"] = point.entropy.to_string();
  j["boundary"] = point.boundary;
  if (!point.witnesses.empty()) {
    const auto& w = point.witnesses.front();
    json labels = json::array(), coeffs = json::array();
    for (std::size_t i = 0; i < w.subset.size(); ++i) {
      labels.push_back(w.subset[i].bits());
      coeffs.push_back(w.coefficients[i].to_string());
    }
    j["witness_vertices"] = labels;
    j["witness_coefficients"] = coeffs;
  }
  return j;
}

json results_to_json(int qubits, const std::vector<CriticalPoint>& points) {
  json doc;
  doc["qubits"] = qubits;
  doc["critical_points"] = json::array();
  for (const auto& p : points) doc["critical_points"].push_back(to_json(p));
  return doc;
}

std::string format_points(int qubits, const std::vector<CriticalPoint>& points, Format format) {
  switch (format) {
    case Format::json:
      return results_to_json(qubits, points).dump(2) + "\n";
    case Format::csv: {
      std::string out = "qubits,beta,norm_sq,entropy\n";
      for (const auto& p : points)
        out += std::to_string(qubits) + "," + joined(p.beta) + "," + p.norm_sq.to_string() + "," + p.entropy.to_string() + "\n";
      return out;
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"#", "beta", "|beta|^2", "entropy", "boundary"}};
      std::size_t n = 0;
      for (const auto& p : points)
        rows.push_back({std::to_string(++n), beta_string(p.beta), p.norm_sq.to_string(), p.entropy.to_string(),
                        p.boundary ? "yes" : "no"});
      return render_table(rows);
    }
  }
  return {};
}

std::string format_candidates(int qubits, const std::vector<CanonicalBeta>& betas, Format format) {
  switch (format) {
    case Format::json: {
      json doc;
      doc["qubits"] = qubits;
      doc["candidates"] = json::array();
      for (const auto& b : betas) doc["candidates"].push_back(beta_json(b));
      return doc.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out = "qubits,beta\n";
      for (const auto& b : betas) out += std::to_string(qubits) + "," + joined(b) + "\n";
      return out;
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"#", "beta"}};
      std::size_t n = 0;
      for (const auto& b : betas) rows.push_back({std::to_string(++n), beta_string(b)});
      return render_table(rows);
    }
  }
  return {};
}

ResultsDocument parse_results(std::string_view text) {
  const json doc = parse_json(text);
  ResultsDocument out;
  out.qubits = parse_qubits(doc);
  if (!doc.contains("critical_points") || !doc["critical_points"].is_array()) malformed("missing 'critical_points' array");
  if (doc["critical_points"].empty()) malformed("no critical points");
  for (const auto& p : doc["critical_points"]) {
    if (!p.is_object() || !p.contains("beta")) malformed("critical point without 'beta'");
    out.betas.push_back(parse_beta(p["beta"], out.qubits));
  }
  return out;
}

json state_to_json(const StateVector& state, const StateMeta& meta) {
  json doc;
  doc["qubits"] = state.qubits;
  json amps = json::array();
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
    amps.push_back({state.amplitudes(i).real(), state.amplitudes(i).imag()});
  doc["amplitudes"] = amps;
  json m = json::object();
  if (meta.beta) m["beta"] = beta_json(*meta.beta);
  if (meta.entropy) m["entropy"] = meta.entropy->to_string();
  if (!meta.route.empty()) m["route"] = meta.route;
  if (!m.empty()) doc["meta"] = m;
  return doc;
}

StateDocument parse_state(std::string_view text, double norm_tolerance) {
  const json doc = parse_json(text);
  StateDocument out;
  out.state.qubits = parse_qubits(doc);
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) malformed("missing 'amplitudes' array");
  const auto& amps = doc["amplitudes"];
  const std::size_t dim = std::size_t{1} << out.state.qubits;
  if (amps.size() != dim) malformed("expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(amps.size()));
  out.state.amplitudes.resize(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& a = amps[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) malformed("amplitude must be [re, im]");
    out.state.amplitudes(static_cast<Eigen::Index>(i)) = {a[0].get<double>(), a[1].get<double>()};
  }
  const double norm = out.state.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > norm_tolerance) malformed("state is not normalized (norm " + std::to_string(norm) + ")");

  if (doc.contains("meta")) {
    const auto& m = doc["meta"];
    if (!m.is_object()) malformed("'meta' must be an object");
    if (m.contains("beta")) out.meta.beta = parse_beta(m["beta"], out.state.qubits);
    if (m.contains("entropy")) {
      if (!m["entropy"].is_string()) malformed("'entropy' must be a rational string");
      try {
        out.meta.entropy = Rational::parse(m["entropy"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        malformed(e.what());
      }
    }
    if (m.contains("route") && m["route"].is_string()) out.meta.route = m["route"].get<std::string>();
  }
  return out;
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["beta_measured"] = r.beta_measured;
  j["beta_expected"] = r.beta_expected;
  j["entropy_measured"] = r.entropy_measured;
  j["entropy_expected"] = r.entropy_expected;
  j["eigen_residual"] = r.eigen_residual;
  j["offdiag_max"] = r.offdiag_max;
  j["pass"] = r.pass;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace qcrit
