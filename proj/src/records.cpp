#include "tempered/records.hpp"

#include <fstream>

#include "tempered/error.hpp"

namespace tempered {

using nlohmann::json;

RecordWriter::RecordWriter(std::ostream& out, const std::string& kind, json meta) : out_(out) {
  json header = {{"format", kRecordsFormat}, {"version", kRecordsVersion}, {"kind", kind}};
  for (auto& [k, v] : meta.items()) header[k] = v;
  out_ << header.dump() << '\n';
}

void RecordWriter::write(const json& record) {
  out_ << record.dump() << '\n';
  ++count_;
}

RecordStream read_records(std::istream& in) {
  RecordStream rs;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(n) + ": " + e.what());
    }
    if (rs.header.is_null()) {
      if (!j.is_object() || j.value("format", "") != kRecordsFormat)
        throw Error(ErrorCode::ParseError, "line 1: not a record stream");
      if (j.value("version", 0) > kRecordsVersion || j.value("version", 0) < 1)
        throw Error(ErrorCode::ParseError, "line 1: unsupported record version");
      rs.header = std::move(j);
    } else {
      rs.records.push_back(std::move(j));
    }
  }
  if (rs.header.is_null()) throw Error(ErrorCode::ParseError, "empty record stream");
  return rs;
}

RecordStream read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_records(in);
}

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const ParamVector& a) {
  json out = json::array();
  for (auto z : a) out.push_back(to_json(z));
  return out;
}

ParamVector param_from_json(const json& j) {
  ParamVector a;
  for (const auto& z : j) a.push_back(complex_from_json(z));
  return a;
}

json to_json(const ScanBox& box) {
  json out = json::array();
  for (auto [lo, hi] : box.intervals) out.push_back({lo, hi});
  return out;
}

ScanBox box_from_json(const json& j) {
  ScanBox b;
  for (const auto& iv : j) b.intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
  return b;
}

json to_json(const ScanNode& node) {
  json j = {{"index", node.index}, {"a", to_json(node.a)}, {"masked", node.masked}};
  if (node.masked) {
    j["reason"] = node.mask_reason;
  } else {
    j["value"] = node.value;
    j["euclidean"] = node.euclidean;
  }
  return j;
}

json to_json(const ExactPoint& p) {
  json rationals = json::array();
  for (const auto& f : p.torsion.rationals) rationals.push_back({{"p", f.p}, {"q", f.q}, {"residual", f.residual}});
  json periods = json::array();
  for (auto z : p.full_periods) periods.push_back(to_json(z));
  return {{"a", to_json(p.a)},
          {"seed", to_json(p.seed)},
          {"residual", p.residual},
          {"iterations", p.iterations},
          {"history", p.history},
          {"condition", p.condition},
          {"sigma_min", p.sigma_min},
          {"full_periods", periods},
          {"certificate",
           {{"radius", p.certificate.radius},
            {"floor", p.certificate.floor},
            {"samples", p.certificate.samples},
            {"masked", p.certificate.masked},
            {"certified", p.certificate.certified},
            {"partial", p.certificate.partial}}},
          {"torsion", {{"candidate", p.torsion.candidate}, {"rationals", rationals}, {"note", p.torsion.note}}}};
}

json to_json(const EnumerationReport& r) {
  json points = json::array(), outcomes = json::array();
  for (const auto& p : r.points) points.push_back(to_json(p));
  for (const auto& [a, o] : r.seed_outcomes) outcomes.push_back({{"seed", to_json(a)}, {"outcome", o}});
  return {{"points", points},         {"nodes", r.nodes},       {"masked", r.masked},
          {"seeds", r.seeds},         {"refined", r.refined},   {"failed", r.failed},
          {"seed_outcomes", outcomes}, {"all_masked", r.all_masked}, {"budget_exceeded", r.budget_exceeded}};
}

namespace {

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json to_json(const PeriodMatrix& pm) {
  return {{"Pi", matrix_json(pm.Pi)},
          {"tau", matrix_json(pm.tau)},
          {"symmetry_residual", pm.symmetry_residual},
          {"min_imag_eigenvalue", pm.min_imag_eigenvalue},
          {"a_block_condition", pm.a_block_condition}};
}

json to_json(const RegulatorVector& r) {
  json full = json::array();
  for (auto z : r.full_periods) full.push_back(to_json(z));
  return {{"a", to_json(r.a)},
          {"eta_periods", r.eta_periods},
          {"full_periods", full},
          {"norm", r.norm},
          {"hodge_norm", r.hodge_norm},
          {"consistency", r.consistency}};
}

}  // namespace tempered
