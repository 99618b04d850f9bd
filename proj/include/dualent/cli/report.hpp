// Report serialization: text for people, json with full diagnostics, csv for
// plotting.  Output depends only on the result, so equal inputs give equal
// bytes.

#ifndef DUALENT_CLI_REPORT_HPP_
#define DUALENT_CLI_REPORT_HPP_

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "../crystal.hpp"
#include "../laws.hpp"
#include "../peters.hpp"
#include "../rank_search.hpp"
#include "../spectral.hpp"

namespace dualent::cli {

using Json = nlohmann::json;

enum class Format { text, json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "text")
    return Format::text;
  if (s == "json")
    return Format::json;
  if (s == "csv")
    return Format::csv;
  throw Error("unknown format '" + s + "' (text, json or csv)");
}

inline std::string fmt(double x, int digits = 16) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

struct Report {
  Json json;
  std::vector<std::pair<std::string, std::string>> lines; // text rendering
  std::vector<std::string> csv;                           // header first
};

inline std::string emit_report(const Report& r, Format f) {
  std::string out;
  switch (f) {
  case Format::json:
    return r.json.dump(2) + "\n";
  case Format::text:
    for (const auto& [k, v] : r.lines)
      out += k.empty() ? v + "\n" : k + ": " + v + "\n";
    return out;
  case Format::csv:
    for (const std::string& row : r.csv)
      out += row + "\n";
    return out;
  }
  return out;
}

inline Json int_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline Json element_json(const AbelianElement& x) {
  Json j = Json::array();
  for (const Int& v : x.lattice)
    j.push_back(int_json(v));
  for (std::int64_t t : x.torsion)
    j.push_back(t);
  return j;
}

inline Json element_json(const CrystalGroup& g, const CrystalElement& x) {
  Json j = Json::array();
  j.push_back(g.name(x.f));
  for (const Int& v : x.lattice)
    j.push_back(int_json(v));
  return j;
}

inline std::string element_text(const Json& e) {
  std::string s;
  for (const Json& v : e) {
    if (v.is_string()) {
      s += v.get<std::string>() + ";";
      continue;
    }
    if (!s.empty())
      s += " ";
    s += v.dump();
  }
  return "(" + s + ")";
}

inline Report entropy_report(const EntropyEstimate& e) {
  Report r;
  r.json["value"] = e.value;
  r.json["method"] = method_name(e.method);
  r.json["tolerance"] = e.tolerance;
  Json diag;
  diag["series"] = e.series;
  diag["extras"] = Json::object();
  for (const auto& [k, v] : e.extras)
    diag["extras"][k] = v;
  diag["note"] = e.note;
  r.json["diagnostics"] = diag;
  r.lines = {{"method", method_name(e.method)}, {"entropy", fmt(e.value)}};
  std::string moduli;
  for (double m : e.series)
    moduli += (moduli.empty() ? "" : " ") + fmt(m, 12);
  if (!moduli.empty())
    r.lines.push_back({"root moduli", moduli});
  for (const auto& [k, v] : e.extras)
    r.lines.push_back({k, fmt(v)});
  if (!e.note.empty())
    r.lines.push_back({"note", e.note});
  r.csv = {"method,value", std::string(method_name(e.method)) + "," + fmt(e.value, 17)};
  return r;
}

inline Report growth_report(const GrowthSeries& s, const GrowthRate& rate, const std::string& matrix) {
  Report r;
  r.json["method"] = "peters";
  r.json["value"] = rate.estimate.value;
  r.json["average_rate"] = rate.average;
  r.json["tail_rate"] = rate.tail;
  r.json["tail_window"] = rate.k;
  r.json["series"] = s.sizes;
  r.json["capped"] = s.capped;
  r.json["cap"] = s.cap;
  if (s.capped)
    r.json["cap_lower_bound"] = s.cap_lower_bound;
  r.json["zero_adjoined"] = s.zero_adjoined;
  r.json["submultiplicative"] = s.submultiplicative();
  r.json["automorphism"] = matrix;
  r.lines = {{"method", "peters"},
             {"rate (tail)", fmt(rate.tail)},
             {"rate (average)", fmt(rate.average)},
             {"terms", std::to_string(s.sizes.size()) + (s.capped ? " (capped)" : "")}};
  if (s.zero_adjoined)
    r.lines.push_back({"note", "0 adjoined to E"});
  r.csv.push_back("n,size,log_size_over_n");
  for (std::size_t n = 1; n <= s.sizes.size(); ++n) {
    double sz = static_cast<double>(s.sizes[n - 1]);
    r.csv.push_back(std::to_string(n) + "," + std::to_string(s.sizes[n - 1]) + "," +
                    fmt(std::log(sz) / static_cast<double>(n), 17));
    r.lines.push_back({"s_" + std::to_string(n), std::to_string(s.sizes[n - 1])});
  }
  return r;
}

// describe(x) gives the json form of an element.
template <GroupOps G, class Describe>
Report rank_report(const RankCertificate<G>& c, const std::string& method, Describe describe) {
  Report r;
  r.json["method"] = method;
  r.json["rank"] = c.rank;
  r.json["delta"] = c.delta;
  r.json["radius"] = c.radius;
  r.json["defect"] = c.defect;
  r.json["exact_defect"] = c.exact_defect ? Json(c.exact_defect->str()) : Json(nullptr);
  r.json["exhaustive_within_radius"] = c.exhaustive_within_radius;
  r.json["exact"] = c.exact;
  r.json["supports_tested"] = c.supports_tested;
  r.json["omega"] = Json::array();
  for (const auto& s : c.omega)
    r.json["omega"].push_back(describe(s));
  Json witness = Json::array();
  r.csv.push_back("element,weight");
  for (std::size_t i = 0; i < c.witness.size(); ++i) {
    Json w;
    w["element"] = describe(c.witness.support()[i]);
    w["weight"] = c.witness.weights()[i];
    if (c.witness.is_exact())
      w["exact_weight"] = c.witness.exact_weights()[i].str();
    witness.push_back(w);
    std::string weight = c.witness.is_exact() ? c.witness.exact_weights()[i].str() : fmt(c.witness.weights()[i], 17);
    r.csv.push_back("\"" + element_text(w["element"]) + "\"," + weight);
  }
  r.json["witness"] = witness;
  r.lines = {{"method", method},
             {"rank", std::to_string(c.rank) + (c.exhaustive_within_radius ? " (minimal within radius " +
                                                                                  std::to_string(c.radius) + ")"
                                                                            : " (upper bound)")},
             {"delta", fmt(c.delta)},
             {"defect", c.exact_defect ? c.exact_defect->str() + " = " + fmt(c.defect) : fmt(c.defect)}};
  std::string support;
  for (std::size_t i = 0; i < c.witness.size() && i < 64; ++i) {
    support += (i ? " " : "") + element_text(describe(c.witness.support()[i])) + "=" +
               (c.witness.is_exact() ? c.witness.exact_weights()[i].str() : fmt(c.witness.weights()[i], 8));
  }
  if (c.witness.size() > 64)
    support += " ...";
  r.lines.push_back({"witness", support});
  return r;
}

inline Json law_failure_json(const LawFailure& f) {
  return {{"trial", f.trial}, {"seed", f.seed}, {"inputs", f.inputs}, {"detail", f.detail}, {"deviation", f.deviation}};
}

inline Report laws_report(const std::vector<LawReport>& reports, std::uint64_t seed) {
  Report r;
  r.json["seed"] = seed;
  r.json["laws"] = Json::array();
  r.csv.push_back("law,instances,failures,inconclusive,max_deviation,tolerance,status");
  bool all = true;
  for (const LawReport& l : reports) {
    Json j;
    j["law"] = l.law;
    j["instances"] = l.instances;
    j["max_deviation"] = l.max_deviation;
    j["tolerance"] = l.tolerance;
    j["passed"] = l.passed();
    j["failures"] = Json::array();
    for (const auto& f : l.failures)
      j["failures"].push_back(law_failure_json(f));
    j["inconclusive"] = Json::array();
    for (const auto& f : l.inconclusive)
      j["inconclusive"].push_back(law_failure_json(f));
    r.json["laws"].push_back(j);
    all = all && l.passed();
    std::string status = l.passed() ? (l.inconclusive.empty() ? "PASS" : "PASS (inconclusive " +
                                                                             std::to_string(l.inconclusive.size()) + ")")
                                    : "FAIL";
    r.lines.push_back({"", status + " " + l.law + ": " + std::to_string(l.instances) + " instances, max deviation " +
                               fmt(l.max_deviation, 6)});
    for (const auto& f : l.failures)
      r.lines.push_back({"", "  failure: trial " + std::to_string(f.trial) + " seed " + std::to_string(f.seed) + ": " +
                                 f.inputs + " | " + f.detail});
    for (const auto& f : l.inconclusive)
      r.lines.push_back({"", "  inconclusive: " + f.inputs + " | " + f.detail});
    r.csv.push_back(l.law + "," + std::to_string(l.instances) + "," + std::to_string(l.failures.size()) + "," +
                    std::to_string(l.inconclusive.size()) + "," + fmt(l.max_deviation, 17) + "," + fmt(l.tolerance, 17) +
                    "," + (l.passed() ? "PASS" : "FAIL"));
  }
  r.json["passed"] = all;
  r.lines.push_back({"", all ? "all laws passed" : "some laws failed"});
  return r;
}

} // namespace dualent::cli

#endif // DUALENT_CLI_REPORT_HPP_
