#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "flagzeta/cone_lq.hpp"
#include "flagzeta/counter.hpp"
#include "flagzeta/curve_zeta.hpp"
#include "flagzeta/eisenstein.hpp"
#include "flagzeta/rational.hpp"
#include "flagzeta/root_system.hpp"
#include "flagzeta/tamagawa.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace flagzeta;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  void report(const std::string& label) {
    auto dt = std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "# timing %s %.3fs\n", label.c_str(),
                 std::chrono::duration<double>(dt).count());
    t0 = std::chrono::steady_clock::now();
  }
};

json sl_json(const ScaledLimit& s) {
  return json{{"coeff", rat_str(s.coeff)}, {"logq_pow", s.logq_pow}};
}

std::vector<std::string> poly_strs(const Poly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.c) out.push_back(rat_str(c));
  if (out.empty()) out.push_back("0");
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    out.push_back(tok);
  }
  return out;
}

// 1-based comma-separated simple-root indices -> 0-based subset
IVec parse_parabolic(const std::string& s, int rank) {
  IVec I;
  for (const auto& tok : split_csv(s)) {
    if (tok.empty()) continue;
    int idx;
    try {
      idx = std::stoi(tok);
    } catch (...) {
      throw UsageError("--parabolic: bad index '" + tok + "'");
    }
    if (idx < 1 || idx > rank)
      throw UsageError("--parabolic: index " + std::to_string(idx) +
                       " outside 1.." + std::to_string(rank));
    I.push_back(idx - 1);
  }
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  return I;
}

CurveZeta curve_from(long q, int genus, const std::string& znum) {
  std::vector<Int> num;
  for (const auto& tok : split_csv(znum)) {
    if (tok.empty()) continue;
    try {
      num.push_back(Int(tok));
    } catch (...) {
      throw UsageError("--zeta-numerator: bad coefficient '" + tok + "'");
    }
  }
  if (num.empty()) num.push_back(Int(1));
  return make_curve(q, genus, num);
}

void require_rational_base(int genus, const std::string& znum) {
  if (genus != 0)
    throw UsageError("point counting supports only the genus-0 base curve");
  for (const auto& tok : split_csv(znum))
    if (!tok.empty() && tok != "1")
      throw UsageError("point counting supports only the trivial zeta numerator");
}

struct VarietyInfo {
  std::string group;
  IVec I;
  int rank2 = 0;  // nonzero for surfaces graded by two degrees
};

VarietyInfo variety_info(const std::string& v) {
  if (v == "P1") return {"A1", {}, 0};
  if (v == "P2") return {"A2", {1}, 0};
  if (v == "P1xP1") return {"A1xA1", {}, 2};
  if (v == "FL3") return {"A2", {}, 2};
  throw UsageError("unknown variety '" + v + "' (P1, P2, P1xP1, FL3)");
}

CountTable enumerate_variety(const std::string& v, long q, int D, int jobs) {
  if (v == "P1") return enumerate_projective(1, q, D, jobs);
  if (v == "P2") return enumerate_projective(2, q, D, jobs);
  if (v == "P1xP1") return enumerate_p1xp1(q, D, D, jobs);
  if (v == "FL3") return enumerate_flag_sl3(q, D, D, jobs);
  throw UsageError("unknown variety '" + v + "'");
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

int cmd_predict(const std::string& group, const std::string& parabolic, long q,
                int genus, const std::string& znum, int truncate,
                bool want_truncate) {
  RootSystem rs = build_root_system(group);
  IVec I = parse_parabolic(parabolic, rs.rank);
  CurveZeta curve = curve_from(q, genus, znum);
  ParabolicDatum pd = parabolic_datum(rs, I);
  Timer tm;
  ScaledLimit tau = tamagawa_closed(curve, rs, I);
  ScaledLimit theta = theta_star(curve, rs, I);
  tm.report("tamagawa");
  ScaledLimit lhs = theorem_lhs(curve, rs, I);
  tm.report("cfunction");
  json out;
  out["alpha_star"] = rat_str(alpha_star(pd));
  out["beta"] = "1";
  out["tau"] = sl_json(tau);
  out["theta_star"] = sl_json(theta);
  out["lhs"] = sl_json(lhs);
  bool ok = theta == lhs;
  out["identity_holds"] = ok;
  if (want_truncate) {
    TruncatedTamagawa tt = tamagawa_truncated(curve, rs, I, truncate);
    tm.report("truncation");
    out["truncated_tau"] = tt.value;
  }
  emit(out);
  return ok ? 0 : 1;
}

int cmd_alpha(const std::string& group, const std::string& parabolic,
              const std::string& format) {
  RootSystem rs = build_root_system(group);
  ParabolicDatum pd = parabolic_datum(rs, parse_parabolic(parabolic, rs.rank));
  Rat a = alpha_star(pd);
  Rat chi = chi_value(orthant(pd.t), pd.anticanonical);
  bool agree = a == chi;
  if (format == "json") {
    emit(json{{"alpha_star", rat_str(a)}, {"chi", rat_str(chi)}, {"agree", agree}});
  } else {
    std::cout << rat_str(a) << "\n";
    std::cout << "chi " << rat_str(chi) << (agree ? " ok" : " mismatch") << "\n";
  }
  return agree ? 0 : 1;
}

int cmd_cfunction(const std::string& group, const std::string& wspec,
                  const std::string& parabolic, bool parabolic_given, long q,
                  int genus, const std::string& znum) {
  RootSystem rs = build_root_system(group);
  CurveZeta curve = curve_from(q, genus, znum);
  WeylElt w;
  if (wspec == "longest") {
    IVec J;
    if (parabolic_given) {
      J = parse_parabolic(parabolic, rs.rank);
    } else {
      for (int i = 0; i < rs.rank; ++i) J.push_back(i);
    }
    w = longest_element(rs, J);
  } else {
    w = weyl_identity(rs);
    for (char ch : wspec) {
      if (ch < '1' || ch > '0' + rs.rank)
        throw UsageError("--w: expected 'longest' or a word of 1-based "
                         "generator indices like '121'");
      w = weyl_mul(rs, w, simple_reflection(rs, ch - '1'));
    }
  }
  IVec ones(rs.rank, 1);
  RatFn g = global_c(curve, rs, w, rho_line(rs, ones));
  json out;
  out["group"] = group;
  out["q"] = q;
  std::vector<int> word;
  for (int i : w.word) word.push_back(i + 1);
  out["w"] = word;
  out["num"] = poly_strs(g.num);
  out["den"] = poly_strs(g.den);
  out["pole_order_at_1"] = -order_at(g, Rat(1));
  emit(out);
  return 0;
}

int cmd_count(const std::string& variety, long q, int D, int jobs,
              const std::string& format, int genus, const std::string& znum) {
  require_rational_base(genus, znum);
  Timer tm;
  CountTable tab = enumerate_variety(variety, q, D, jobs);
  tm.report("enumerate");
  if (format == "json") {
    json out;
    out["variety"] = variety;
    out["q"] = q;
    out["rank"] = tab.rank;
    out["max_degrees"] = tab.max_degrees;
    json rows = json::array();
    for (const auto& [d, n] : tab.counts)
      rows.push_back(json{{"d", d}, {"count", n}});
    out["counts"] = rows;
    emit(out);
  } else {
    for (const auto& [d, n] : tab.counts) {
      std::string row;
      for (int v : d) row += std::to_string(v) + ",";
      row += std::to_string(n);
      std::cout << row << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& variety, long q, int D, int jobs,
               int truncate, int genus, const std::string& znum) {
  require_rational_base(genus, znum);
  VarietyInfo vi = variety_info(variety);
  RootSystem rs = build_root_system(vi.group);
  ParabolicDatum pd = parabolic_datum(rs, vi.I);
  CurveZeta curve = projective_line(q);
  Timer tm;

  ScaledLimit theta = theta_star(curve, rs, vi.I);
  ScaledLimit lhs = theorem_lhs(curve, rs, vi.I);
  bool identity = theta == lhs;
  tm.report("residues");

  ScaledLimit tau = tamagawa_closed(curve, rs, vi.I);
  TruncatedTamagawa tt = tamagawa_truncated(curve, rs, vi.I, truncate);
  double tau_coeff = tau.coeff.convert_to<double>();
  double relerr = std::abs(tt.value - tau_coeff) / tau_coeff;
  bool trunc_ok = relerr <= std::max(1e-4, 2.0 * tt.tail_bound);
  tm.report("truncation");

  CountTable tab = enumerate_variety(variety, q, D, jobs);
  tm.report("enumerate");
  EmpiricalResidue er = empirical_residue(tab, pd, q);
  tm.report("residue-fit");

  json empirical;
  bool emp_ok;
  double target = theta.coeff.convert_to<double>();
  if (er.exact) {
    emp_ok = *er.exact == theta;
    empirical["mode"] = "exact";
    empirical["value"] = sl_json(*er.exact);
    empirical["match"] = emp_ok;
  } else {
    double threshold = variety == "FL3" ? 0.25 : 0.10;
    double rel = std::abs(er.estimate - target) / target;
    std::fprintf(stderr,
                 "warning: no verified rational fit for %s at max degree %d; "
                 "comparing the float estimate (threshold %.2f)\n",
                 variety.c_str(), D, threshold);
    emp_ok = rel <= threshold;
    empirical["mode"] = "estimate";
    empirical["value"] = er.estimate;
    empirical["rel_error"] = rel;
    empirical["threshold"] = threshold;
  }

  std::vector<int> parab;
  for (int i : vi.I) parab.push_back(i + 1);
  json out;
  out["case"] = json{{"variety", variety},
                     {"group", vi.group},
                     {"parabolic", parab},
                     {"q", q}};
  out["theta_star"] = sl_json(theta);
  out["lhs"] = sl_json(lhs);
  out["identity_holds"] = identity;
  out["tau_truncated_relerr"] = relerr;
  out["empirical"] = empirical;
  bool pass = identity && trunc_ok && emp_ok;
  out["pass"] = pass;
  emit(out);
  return pass ? 0 : 1;
}

int cmd_zeta_curve(long q, int genus, const std::string& znum) {
  CurveZeta c = curve_from(q, genus, znum);
  RatFn z = zeta_rat(c);
  json out;
  out["q"] = c.q;
  out["genus"] = c.genus;
  out["numerator"] = poly_strs(c.numerator);
  out["class_number"] = rat_str(class_number(c));
  out["zeta"] = json{{"num", poly_strs(z.num)}, {"den", poly_strs(z.den)}};
  out["residue"] = sl_json(curve_residue(c));
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residue toolkit for height zeta functions of split flag "
               "varieties over F_q(t)"};
  app.require_subcommand(1);
  app.footer("FLAGZETA_WORKCAP scales the enumeration budget as roughly "
             "2^cap steps (expert only; default 36).");

  long q = 2;
  int genus = 0;
  std::string znum = "1";
  std::string format;
  int jobs = 1;
  app.add_option("--q", q, "size of the constant field (prime power)")
      ->capture_default_str();
  app.add_option("--genus", genus, "genus of the base curve")
      ->capture_default_str();
  app.add_option("--zeta-numerator", znum,
                 "curve zeta numerator coefficients, comma separated");
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "worker threads for enumeration")
      ->capture_default_str();

  std::string group, parabolic, variety, wspec = "longest";
  int truncate = 12, max_degree = 0;

  auto* predict = app.add_subcommand(
      "predict", "both residue predictions and the identity check");
  predict->add_option("--group", group, "root system, e.g. A2, B2, G2, A1xA1")
      ->required();
  predict->add_option("--parabolic", parabolic,
                      "1-based simple roots of the parabolic, comma separated");
  auto* trunc_opt = predict->add_option(
      "--truncate", truncate, "also report the Euler product through degree D");
  predict->fallthrough();

  auto* alpha = app.add_subcommand("alpha", "rational cone volume alpha*");
  alpha->add_option("--group", group)->required();
  alpha->add_option("--parabolic", parabolic);
  alpha->fallthrough();

  auto* cfn = app.add_subcommand("cfunction",
                                 "global intertwining c-function on the "
                                 "anticanonical line");
  cfn->add_option("--group", group)->required();
  cfn->add_option("--w", wspec, "'longest' or a word like '121'")
      ->capture_default_str();
  auto* cfn_par = cfn->add_option("--parabolic", parabolic,
                                  "take the longest element of this subgroup");
  cfn->fallthrough();

  auto* count = app.add_subcommand("count", "exhaustive height point counts");
  count->add_option("--variety", variety, "P1, P2, P1xP1 or FL3")->required();
  count->add_option("--max-degree", max_degree, "height degree bound")
      ->required();
  count->fallthrough();

  auto* verify = app.add_subcommand(
      "verify", "cross-check predictions against enumeration");
  verify->add_option("--variety", variety, "P1, P2, P1xP1 or FL3")->required();
  verify->add_option("--max-degree", max_degree, "height degree bound")
      ->required();
  verify->add_option("--truncate", truncate,
                     "Euler product truncation degree for the tau check")
      ->capture_default_str();
  verify->fallthrough();

  auto* zc = app.add_subcommand("zeta-curve", "zeta function of the base curve");
  zc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (q < 2 || !is_prime_power(q))
      throw UsageError("--q must be a prime power >= 2");
    if (*predict)
      return cmd_predict(group, parabolic, q, genus, znum, truncate,
                         trunc_opt->count() > 0);
    if (*alpha) return cmd_alpha(group, parabolic, format);
    if (*cfn)
      return cmd_cfunction(group, wspec, parabolic, cfn_par->count() > 0, q,
                           genus, znum);
    if (*count)
      return cmd_count(variety, q, max_degree, jobs,
                       format.empty() ? "csv" : format, genus, znum);
    if (*verify)
      return cmd_verify(variety, q, max_degree, jobs, truncate, genus, znum);
    if (*zc) return cmd_zeta_curve(q, genus, znum);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
