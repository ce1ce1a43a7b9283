#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmtame/pipeline.hpp"

namespace gmtame {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& q) { return q.get_str(); }
inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("expected a rational as a \"p/q\" string", 0);
  return parse_rational(j.get<std::string>());
}

inline json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}
inline QMatrix qmatrix_from_json(const json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(rational_from_json(x));
  }
  if (rows.empty()) return QMatrix(0, 0);
  return QMatrix::from_rows(rows);
}

inline json to_json(const SpectrumData& s) {
  json out;
  out["mu"] = s.mu;
  out["spectrum"] = json::array();
  for (const auto& [a, m] : s.values) out["spectrum"].push_back({{"alpha", to_json(a)}, {"mult", m}});
  out["mean"] = to_json(s.mean);
  return out;
}
inline SpectrumData spectrum_from_json(const json& j) {
  std::vector<Rational> xs;
  for (const auto& e : j.at("spectrum")) {
    int m = e.at("mult").get<int>();
    if (m <= 0) throw ParseError("spectral multiplicity must be positive", 0);
    xs.insert(xs.end(), static_cast<std::size_t>(m), rational_from_json(e.at("alpha")));
  }
  SpectrumData s = SpectrumData::from_multiset(std::move(xs));
  if (j.contains("mu") && j["mu"].get<std::size_t>() != s.mu) throw ParseError("mu disagrees with the multiplicities", 0);
  return s;
}

inline json to_json(const MonodromyClass& c) {
  return {{"alpha", to_json(c.alpha)}, {"eigenvalue", "exp(-2*pi*i*" + c.alpha.get_str() + ")"}, {"mult", c.mult},
          {"partition", c.partition}};
}
inline MonodromyClass monodromy_class_from_json(const json& j) {
  MonodromyClass c;
  c.alpha = rational_from_json(j.at("alpha"));
  c.partition = j.at("partition").get<std::vector<int>>();
  c.mult = 0;
  for (int p : c.partition) c.mult += p;
  if (j.contains("mult") && j["mult"].get<int>() != c.mult) throw ParseError("class multiplicity disagrees with its partition", 0);
  return c;
}

inline json to_json(const MonodromyData& m) {
  json out;
  out["classes"] = json::array();
  for (const auto& c : m.classes) out["classes"].push_back(to_json(c));
  out["log_matrix"] = to_json(m.log_matrix);
  return out;
}

inline json to_json(const PipelineResult& r) {
  json out;
  out["f"] = r.f;
  out["vars"] = r.vars;
  out["n"] = r.n;
  out["mu"] = r.mu;
  out["phis"] = json::array();
  for (const auto& p : r.phis) out["phis"].push_back(p.str(r.vars));
  out["A0"] = to_json(r.A0);
  out["A1"] = to_json(r.A1);
  out["spectrum"] = to_json(r.spectrum);
  out["monodromy"] = to_json(r.monodromy);
  out["spectrum_symmetric"] = r.spectrum_symmetric;
  out["stats"] = {{"k", r.stats.k},
                  {"k0", r.stats.k0},
                  {"l", r.stats.l},
                  {"lattice_probes", r.stats.lattice_probes},
                  {"mean_retries", r.stats.mean_retries},
                  {"saturation_steps", r.stats.saturation_steps},
                  {"twist_rounds", r.stats.twist_rounds},
                  {"corrections", r.stats.corrections}};
  return out;
}

inline PipelineResult result_from_json(const json& j) {
  PipelineResult r;
  r.f = j.at("f").get<std::string>();
  r.vars = j.at("vars").get<std::vector<std::string>>();
  r.n = j.at("n").get<int>();
  r.mu = j.at("mu").get<std::size_t>();
  for (const auto& p : j.at("phis")) r.phis.push_back(parse_poly(p.get<std::string>(), r.vars));
  r.A0 = qmatrix_from_json(j.at("A0"));
  r.A1 = qmatrix_from_json(j.at("A1"));
  r.spectrum = spectrum_from_json(j.at("spectrum"));
  for (const auto& c : j.at("monodromy").at("classes")) r.monodromy.classes.push_back(monodromy_class_from_json(c));
  r.monodromy.log_matrix = qmatrix_from_json(j.at("monodromy").at("log_matrix"));
  r.spectrum_symmetric = j.at("spectrum_symmetric").get<bool>();
  const auto& s = j.at("stats");
  r.stats.k = s.at("k").get<int>();
  r.stats.k0 = s.at("k0").get<int>();
  r.stats.l = s.at("l").get<int>();
  r.stats.lattice_probes = s.at("lattice_probes").get<int>();
  r.stats.mean_retries = s.at("mean_retries").get<int>();
  r.stats.saturation_steps = s.at("saturation_steps").get<int>();
  r.stats.twist_rounds = s.at("twist_rounds").get<int>();
  r.stats.corrections = s.at("corrections").get<int>();
  return r;
}

inline std::string spectrum_text(const SpectrumData& s) {
  std::ostringstream os;
  os << "mu = " << s.mu << "\n";
  os << "spectrum:";
  for (const auto& [a, m] : s.values) os << " " << a.get_str() << ":" << m;
  os << "\nmean = " << s.mean.get_str() << "\n";
  return os.str();
}

inline std::string result_text(const PipelineResult& r) {
  std::ostringstream os;
  os << "f = " << r.f << "\n";
  os << spectrum_text(r.spectrum);
  os << "good basis:\n";
  for (std::size_t i = 0; i < r.phis.size(); ++i) os << "  phi[" << i + 1 << "] = " << r.phis[i].str(r.vars) << "\n";
  os << "A0 =\n" << to_string(r.A0) << "A1 =\n" << to_string(r.A1);
  os << "monodromy at infinity (class alpha means eigenvalue exp(-2 pi i alpha)):\n";
  for (const auto& c : r.monodromy.classes) {
    os << "  alpha " << c.alpha.get_str() << ": mult " << c.mult << ", Jordan blocks [";
    for (std::size_t i = 0; i < c.partition.size(); ++i) os << (i ? "," : "") << c.partition[i];
    os << "]\n";
  }
  return os.str();
}

}  // namespace gmtame
