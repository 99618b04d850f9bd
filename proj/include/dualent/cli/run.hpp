// Subcommand dispatch.  Exit codes: 0 success, 1 computation error, 2 spec
// or usage error, 3 verify found failures.

#ifndef DUALENT_CLI_RUN_HPP_
#define DUALENT_CLI_RUN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "../crystal.hpp"
#include "../folner.hpp"
#include "../laws.hpp"
#include "../parallel.hpp"
#include "../peters.hpp"
#include "../rank_search.hpp"
#include "../spectral.hpp"
#include "report.hpp"
#include "spec_document.hpp"

namespace dualent::cli {

enum ExitCode { exit_ok = 0, exit_computation = 1, exit_spec = 2, exit_verify = 3 };

struct Flags {
  std::optional<double> delta;
  std::optional<std::int64_t> radius;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> cap;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string method = "lp";
  std::string format = "text";
  std::string suite = "all";
  std::size_t trials = 100;
};

// Flag values win over document params, which win over these defaults.
struct Settings {
  double delta = 0.5;
  std::int64_t radius = 4;
  std::int64_t n = 12;
  std::size_t cap = default_sumset_cap;
  double tol = 1e-12;
  std::uint64_t seed = 42;
  bool n_given = false;
  bool cap_given = false;
};

inline Settings resolve(const Params& p, const Flags& f) {
  Settings s;
  auto pick = [](auto& dst, const auto& flag, const auto& param) {
    if (flag)
      dst = *flag;
    else if (param)
      dst = *param;
  };
  pick(s.delta, f.delta, p.delta);
  pick(s.radius, f.radius, p.radius);
  pick(s.n, f.n, p.n);
  pick(s.tol, f.tol, p.tol);
  pick(s.seed, f.seed, p.seed);
  std::int64_t cap = static_cast<std::int64_t>(s.cap);
  pick(cap, f.cap, p.cap);
  s.cap = static_cast<std::size_t>(cap);
  s.n_given = f.n || p.n;
  s.cap_given = f.cap || p.cap;
  if (!(s.delta > 0))
    throw SpecError("--delta must be positive");
  if (!(s.tol > 0))
    throw SpecError("--tol must be positive");
  if (s.n < 1)
    throw SpecError("--n must be >= 1");
  if (s.radius < 0)
    throw SpecError("--radius must be >= 0");
  if (cap < 1)
    throw SpecError("--cap must be >= 1");
  return s;
}

struct Outcome {
  int exit_code = exit_ok;
  std::string output; // report bytes
  std::string error;  // diagnostic for stderr
};

namespace impl {

inline const SpecDocument& need_doc(const std::optional<SpecDocument>& doc, const std::string& command) {
  if (!doc)
    throw SpecError(command + " needs a spec document");
  return *doc;
}

inline const AutoSpec& need_auto(const SpecDocument& doc, const std::string& command) {
  if (!doc.automorphism)
    throw SpecError(command + " needs an 'auto' block");
  return *doc.automorphism;
}

inline const std::vector<ElementSpec>& need_omega(const SpecDocument& doc, const std::string& command) {
  if (!doc.omega || doc.omega->empty())
    throw SpecError(command + " needs a non-empty 'omega' set");
  return *doc.omega;
}

inline std::vector<AbelianElement> abelian_set(const FgAbelianGroup& g, const std::vector<ElementSpec>& s) {
  std::vector<AbelianElement> out;
  for (const ElementSpec& e : s)
    out.push_back(build_abelian_element(g, e));
  return out;
}

inline RankSearchOptions search_options(const Settings& s) {
  RankSearchOptions opt;
  opt.radius = s.radius;
  opt.threads = worker_count(0);
  return opt;
}

inline Report entropy_command(const SpecDocument& doc, const Settings& s) {
  const AutoSpec& a = need_auto(doc, "entropy");
  if (doc.is_crystal()) {
    CrystalGroup g = build_crystal(doc.group);
    return entropy_report(crystal_entropy(g, build_crystal_auto(doc.group, g, a), s.tol));
  }
  if (doc.group.kind == GroupKind::fg_abelian)
    return entropy_report(theorem64_entropy(build_abelian_auto(doc.group, a), s.tol));
  return entropy_report(eigen_entropy(to_int_matrix(a.lattice, doc.group.rank), s.tol));
}

inline Report peters_command(const SpecDocument& doc, const Settings& s) {
  if (doc.is_crystal())
    throw SpecError("peters works on abelian groups only");
  const AutoSpec& a = need_auto(doc, "peters");
  AbelianAutomorphism gamma = build_abelian_auto(doc.group, a);
  FgAbelianGroup g = gamma.group();
  std::vector<AbelianElement> e = doc.e ? abelian_set(g, *doc.e) : unit_cube_corners(g);
  GrowthSeries series = peters_growth(gamma, FiniteSubset(g, e), static_cast<std::size_t>(s.n), s.cap);
  GrowthRate rate = growth_rate_estimate(series);
  return growth_report(series, rate, gamma.lattice_part().str());
}

template <GroupOps G>
void mark_upper_bound(RankCertificate<G>& c) {
  c.exhaustive_within_radius = false;
  c.exact = c.exact_defect.has_value();
}

inline Report rank_interval(const SpecDocument& doc, const Settings& s) {
  if (doc.group.kind != GroupKind::free_abelian || doc.group.rank != 1)
    throw SpecError("--method interval needs the free abelian group of rank 1");
  FgAbelianGroup z(1);
  std::vector<AbelianElement> omega = abelian_set(z, need_omega(doc, "rank"));
  Int widest = 0;
  for (const auto& x : omega)
    widest = std::max(widest, Int(abs(x.lattice[0])));
  // defect of the length-L interval is 2|s|/L (when |s| <= L)
  auto length = static_cast<std::int64_t>(std::floor(2 * widest.convert_to<double>() / s.delta)) + 1;
  while (length > 1 && 2 * widest.convert_to<double>() / static_cast<double>(length - 1) < s.delta)
    --length;
  while (!(2 * widest.convert_to<double>() / static_cast<double>(length) < s.delta))
    ++length;
  if (static_cast<std::size_t>(length) > s.cap)
    throw CapExceeded("interval length " + std::to_string(length) + " exceeds cap", static_cast<std::size_t>(length));
  RankCertificate<AbelianOps> c;
  c.witness = interval_folner(length);
  c.rank = c.witness.size();
  c.delta = s.delta;
  c.omega = omega;
  c.radius = s.radius;
  c.exact_defect = exact_defect(c.witness, omega);
  c.defect = to_double(*c.exact_defect);
  mark_upper_bound(c);
  Report r = rank_report(c, "interval", [](const AbelianElement& x) { return element_json(x); });
  r.json["interval_length"] = length;
  return r;
}

inline Report rank_parallelepiped(const SpecDocument& doc, const Settings& s) {
  if (doc.group.kind != GroupKind::free_abelian || doc.group.rank < 1)
    throw SpecError("--method parallelepiped needs a free abelian group of positive rank");
  const std::size_t p = doc.group.rank;
  FgAbelianGroup g(p);
  std::vector<AbelianElement> omega = abelian_set(g, need_omega(doc, "rank"));
  Parallelepiped chi = [&] {
    if (doc.automorphism) {
      AdaptedBasis b = adapted_basis(to_int_matrix(doc.automorphism->lattice, p), 0.25);
      if (b.validated)
        return b.chi;
    }
    std::vector<std::vector<double>> id(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i)
      id[i][i] = 1;
    return Parallelepiped(id);
  }();
  std::int64_t constant = choose_folner_constant(p, s.delta);
  const std::size_t cap = s.cap_given ? s.cap : default_tower_cap;
  RankCertificate<AbelianOps> c;
  for (;;) {
    c.witness = parallelepiped_folner(chi, constant);
    if (c.witness.size() > cap)
      throw CapExceeded("parallelepiped support exceeds cap", c.witness.size());
    c.exact_defect = exact_defect(c.witness, omega);
    if (to_double(*c.exact_defect) < s.delta)
      break;
    constant *= 2;
  }
  c.rank = c.witness.size();
  c.delta = s.delta;
  c.omega = omega;
  c.radius = s.radius;
  c.defect = to_double(*c.exact_defect);
  mark_upper_bound(c);
  Report r = rank_report(c, "parallelepiped", [](const AbelianElement& x) { return element_json(x); });
  r.json["folner_constant"] = constant;
  Json basis = Json::array();
  for (const auto& v : chi.basis())
    basis.push_back(v);
  r.json["basis"] = basis;
  return r;
}

inline Report rank_tower(const SpecDocument& doc, const Settings& s) {
  if (doc.is_crystal())
    throw SpecError("--method tower works on abelian groups only");
  AbelianAutomorphism gamma = build_abelian_auto(doc.group, need_auto(doc, "rank --method tower"));
  const FgAbelianGroup& g = gamma.group();
  std::vector<AbelianElement> omega = abelian_set(g, need_omega(doc, "rank"));
  const std::size_t n = s.n_given ? static_cast<std::size_t>(s.n) : 3;
  auto base = min_rank_bruteforce(AbelianOps(g), omega, s.delta, search_options(s));
  WeightedFunction tower =
      convolution_tower(base.witness, gamma, n, omega, s.cap_given ? s.cap : default_tower_cap);
  std::vector<AbelianElement> orbit, moved = omega;
  for (std::size_t j = 0; j < n; ++j) {
    for (auto& x : moved) {
      if (std::find(orbit.begin(), orbit.end(), x) == orbit.end())
        orbit.push_back(x);
      x = gamma.apply(x);
    }
  }
  RankCertificate<AbelianOps> c;
  c.witness = tower;
  c.rank = tower.size();
  c.delta = s.delta;
  c.omega = orbit;
  c.radius = s.radius;
  if (tower.is_exact()) {
    c.exact_defect = exact_defect(tower, orbit);
    c.defect = to_double(*c.exact_defect);
  } else {
    c.defect = defect(tower, orbit);
  }
  mark_upper_bound(c);
  Report r = rank_report(c, "tower", [](const AbelianElement& x) { return element_json(x); });
  r.json["tower_steps"] = n;
  r.json["base_rank"] = base.rank;
  r.lines.push_back({"tower", std::to_string(n) + " steps from a rank-" + std::to_string(base.rank) + " witness"});
  return r;
}

inline Report rank_command(const SpecDocument& doc, const Settings& s, const std::string& method) {
  if (method == "interval")
    return rank_interval(doc, s);
  if (method == "parallelepiped")
    return rank_parallelepiped(doc, s);
  if (method == "tower")
    return rank_tower(doc, s);
  if (method != "lp")
    throw SpecError("unknown --method '" + method + "' (lp, interval, parallelepiped or tower)");
  const auto& omega_spec = need_omega(doc, "rank");
  if (doc.is_crystal()) {
    CrystalGroup g = build_crystal(doc.group);
    std::vector<CrystalElement> omega;
    for (const ElementSpec& e : omega_spec)
      omega.push_back(build_crystal_element(doc.group, g, e));
    auto c = min_rank_bruteforce(CrystalOps(g), omega, s.delta, search_options(s));
    return rank_report(c, "lp", [&](const CrystalElement& x) { return element_json(g, x); });
  }
  FgAbelianGroup g = build_abelian(doc.group);
  auto c = min_rank_bruteforce(AbelianOps(g), abelian_set(g, omega_spec), s.delta, search_options(s));
  return rank_report(c, "lp", [](const AbelianElement& x) { return element_json(x); });
}

} // namespace impl

inline Outcome run(const std::string& command, const std::optional<SpecDocument>& doc, const Flags& flags) {
  Outcome out;
  try {
    Format format = [&] {
      try {
        return parse_format(flags.format);
      } catch (const Error& e) {
        throw SpecError(e.what());
      }
    }();
    Settings s = resolve(doc ? doc->params : Params{}, flags);
    Report r;
    if (command == "entropy") {
      r = impl::entropy_command(impl::need_doc(doc, command), s);
    } else if (command == "peters") {
      r = impl::peters_command(impl::need_doc(doc, command), s);
    } else if (command == "rank") {
      r = impl::rank_command(impl::need_doc(doc, command), s, flags.method);
    } else if (command == "verify") {
      std::vector<LawReport> reports;
      try {
        reports = run_laws(flags.suite, s.seed, flags.trials);
      } catch (const Error& e) {
        if (std::find(law_names().begin(), law_names().end(), flags.suite) == law_names().end() &&
            flags.suite != "all")
          throw SpecError(e.what());
        throw;
      }
      r = laws_report(reports, s.seed);
      bool passed = std::all_of(reports.begin(), reports.end(), [](const LawReport& l) { return l.passed(); });
      out.exit_code = passed ? exit_ok : exit_verify;
    } else {
      throw SpecError("unknown command '" + command + "' (entropy, peters, rank or verify)");
    }
    out.output = emit_report(r, format);
  } catch (const SpecError& e) {
    out = {exit_spec, "", e.what()};
  } catch (const Error& e) {
    out = {exit_computation, "", e.what()};
  }
  return out;
}

} // namespace dualent::cli

#endif // DUALENT_CLI_RUN_HPP_
