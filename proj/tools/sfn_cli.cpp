// Command-line front end: classify, verify, convert, expand, lab, catalog.
// All reports are JSON with a schema tag; exit 0 = pass/accepted,
// 1 = mathematical failure (witness in the report), 2 = usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sfn/catalog.hpp"
#include "sfn/padic_lab.hpp"
#include "sfn/ratfunc.hpp"
#include "sfn/verifier.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchema = 1;

std::size_t default_truncation() {
  if (const char* env = std::getenv("SFN_TRUNCATION")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 256;
}

sfn::Poly<sfn::CycElem> parse_poly(const std::string& text) {
  std::vector<sfn::CycElem> coeffs;
  std::string tok;
  int depth = 0;  // commas inside [...] belong to a single element
  for (char ch : text) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      coeffs.push_back(sfn::parse_cyc(tok));
      tok.clear();
    } else {
      tok += ch;
    }
  }
  if (!tok.empty()) coeffs.push_back(sfn::parse_cyc(tok));
  if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
  return sfn::Poly<sfn::CycElem>(std::move(coeffs));
}

json check_to_json(const sfn::CheckRecord& c) {
  json j;
  j["kind"] = c.kind;
  j["p"] = c.p;
  j["s"] = c.s;
  if (c.m) j["m"] = c.m;
  if (c.r) j["r"] = c.r;
  if (c.n) j["n"] = c.n;
  j["order"] = c.order.str();
  j["required"] = c.required;
  j["pass"] = c.pass;
  return j;
}

json report_to_json(const sfn::CongruenceReport& rep) {
  json j;
  j["tested"] = rep.tested();
  j["failed"] = rep.failed();
  if (auto w = rep.first_failure()) j["first_failure"] = check_to_json(*w);
  j["skipped"] = rep.skipped;
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
  j["checks"] = std::move(checks);
  return j;
}

json lab_check_to_json(const sfn::LabCheck& c) {
  json j;
  j["what"] = c.what;
  j["m"] = c.m;
  j["n"] = c.n;
  j["required"] = c.required < 0 ? json("unbounded") : json(c.required);
  j["observed"] = c.observed.str();
  j["pass"] = c.pass;
  j["indeterminate"] = c.indeterminate;
  return j;
}

json lab_report_to_json(const sfn::LabReport& rep) {
  json j;
  j["failed"] = rep.failed();
  j["indeterminate"] = rep.indeterminate();
  j["notes"] = rep.notes;
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(lab_check_to_json(c));
  j["checks"] = std::move(checks);
  return j;
}

int emit(const json& report, const std::string& json_path, bool ok) {
  std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot open report path '" + json_path + "'");
    out << text << "\n";
  }
  return ok ? 0 : 1;
}

int run_classify(const std::string& num, const std::string& den, unsigned long nmax,
                 bool want_minton, const std::string& json_path) {
  sfn::RatFunc f(parse_poly(num), parse_poly(den));
  json report;
  report["schema"] = kSchema;
  if (want_minton) {
    report["command"] = "classify/minton";
    sfn::MintonResult res = sfn::minton_form(f);
    if (res.terms) {
      json terms = json::array();
      for (const auto& t : *res.terms)
        terms.push_back({{"residue", t.residue.str()}, {"alpha", t.alpha.str()}});
      report["terms"] = std::move(terms);
      return emit(report, json_path, true);
    }
    report["diagnostic"] = res.diagnostic;
    return emit(report, json_path, false);
  }
  report["command"] = "classify";
  report["nmax"] = nmax;
  sfn::Verdict v = sfn::classify_2function(f, nmax);
  if (v.is_abelian()) {
    report["verdict"] = "abelian";
    report["period"] = v.form->period;
    report["zeta"] = v.form->zeta.str();
    json residues = json::array();
    for (const auto& a : v.form->residues) residues.push_back(sfn::rational_str(a));
    report["residues"] = std::move(residues);
    return emit(report, json_path, true);
  }
  report["verdict"] = sfn::reject_reason_str(*v.reason);
  report["witness"] = v.witness;
  return emit(report, json_path, false);
}

int run_verify(const std::string& seq, unsigned s, unsigned long pmax, std::uint64_t mmax,
               unsigned rmax, const std::string& json_path) {
  sfn::CatalogEntry src = sfn::resolve_sequence(seq);
  sfn::CongruenceReport rep =
      sfn::verify_s_sequence(src, s, sfn::primes_up_to(pmax), mmax, rmax);
  json report;
  report["schema"] = kSchema;
  report["command"] = "verify";
  report["seq"] = src.name;
  report["s"] = s;
  report["window"] = {{"pmax", pmax}, {"mmax", mmax}, {"rmax", rmax}};
  report["report"] = report_to_json(rep);
  return emit(report, json_path, rep.pass());
}

int run_convert(const std::string& seq, const std::string& rep_name, unsigned s,
                std::uint64_t horizon, const std::string& json_path) {
  sfn::CatalogEntry src = sfn::resolve_sequence(seq);
  std::vector<sfn::CycElem> a = sfn::sequence_window(src, horizon);
  std::vector<sfn::CycElem> converted, back;
  if (rep_name == "b") {
    converted = sfn::a_to_b(a, s);
    back = sfn::b_to_a(converted, s);
  } else if (rep_name == "q") {
    converted = sfn::a_to_q(a);
    back = sfn::q_to_a(converted);
  } else {
    throw CLI::ValidationError("--rep must be b or q");
  }
  bool roundtrip = back == a;
  json report;
  report["schema"] = kSchema;
  report["command"] = "convert";
  report["seq"] = src.name;
  report["rep"] = rep_name;
  if (rep_name == "b") report["s"] = s;
  report["horizon"] = horizon;
  report["roundtrip_exact"] = roundtrip;
  json values = json::array();
  for (const auto& x : converted) values.push_back(x.str());
  report["values"] = std::move(values);
  return emit(report, json_path, roundtrip);
}

int run_expand(const std::string& seq, const std::string& num, const std::string& den,
               std::size_t trunc, bool dwork, const std::string& json_path) {
  sfn::TruncSeries<sfn::CycElem> v(trunc);
  std::string source;
  std::set<unsigned long> excluded;
  if (!seq.empty()) {
    sfn::CatalogEntry src = sfn::resolve_sequence(seq);
    v = sfn::sequence_series(src, trunc);
    excluded = src.excluded_primes;
    source = src.name;
  } else if (!num.empty() && !den.empty()) {
    sfn::RatFunc f(parse_poly(num), parse_poly(den));
    v = sfn::maclaurin(f, trunc);
    source = "rational-function";
  } else {
    throw CLI::ValidationError("need --seq or both --num and --den");
  }
  json report;
  report["schema"] = kSchema;
  report["command"] = "expand";
  report["source"] = source;
  report["truncation"] = trunc;
  json values = json::array();
  for (std::size_t n = 0; n <= trunc; ++n) values.push_back(v[n].str());
  report["coefficients"] = std::move(values);
  bool ok = true;
  if (dwork) {
    sfn::DworkReport d = sfn::dwork_test(v, trunc, excluded);
    json dj;
    dj["is_1_function_evidence"] = d.is_1_function_evidence;
    dj["denominator_primes"] = d.denominator_primes;
    dj["offending"] = d.offending;
    dj["excluded"] = d.excluded;
    if (d.witness) dj["witness"] = {{"p", d.witness->first}, {"coefficient", d.witness->second}};
    report["dwork"] = std::move(dj);
    ok = d.is_1_function_evidence;
  }
  return emit(report, json_path, ok);
}

int run_catalog(bool list, const std::string& seq, std::uint64_t n, const std::string& csv_path,
                const std::string& json_path) {
  json report;
  report["schema"] = kSchema;
  if (list) {
    report["command"] = "catalog/list";
    report["sequences"] = sfn::catalog_names();
    return emit(report, json_path, true);
  }
  sfn::CatalogEntry src = sfn::resolve_sequence(seq);
  report["command"] = "catalog/dump";
  report["seq"] = src.name;
  report["conductor"] = src.conductor;
  report["excluded_primes"] = src.excluded_primes;
  if (src.claimed_s) report["claimed_s"] = *src.claimed_s;
  report["note"] = src.note;
  json values = json::array();
  for (std::uint64_t i = 1; i <= n; ++i) values.push_back(src.at(i).str());
  report["values"] = std::move(values);
  if (!csv_path.empty()) sfn::export_csv(src, csv_path, n);
  return emit(report, json_path, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic toolkit for supercongruence sequences"};
  app.require_subcommand(1);

  std::string num, den, seq, rep_name = "b", json_path, csv_path, x_str = "1";
  unsigned long nmax = 720, pmax = 13, p = 5;
  unsigned s = 2, rmax = 2, n_small = 1, n_max_lab = 3, precision = 0;
  std::uint64_t mmax = 4, horizon = 32, dump_n = 20, m_small = 1;
  bool want_minton = false, want_dwork = false, want_list = false;
  std::size_t trunc = default_truncation();
  std::vector<std::string> xs_str, bs_str;

  auto* classify = app.add_subcommand("classify", "decide the abelian normal form");
  classify->add_option("--num", num, "numerator coefficients, ascending")->required();
  classify->add_option("--den", den, "denominator coefficients, ascending")->required();
  classify->add_option("--nmax", nmax, "period search bound");
  classify->add_flag("--minton", want_minton, "emit the 1-function partial-fraction form instead");
  classify->add_option("--json", json_path, "write the report here as well");

  auto* verify = app.add_subcommand("verify", "congruence checks for a sequence");
  verify->add_option("--seq", seq, "sequence spec")->required();
  verify->add_option("--s", s, "congruence strength")->required();
  verify->add_option("--pmax", pmax, "largest prime tested");
  verify->add_option("--mmax", mmax, "largest m");
  verify->add_option("--rmax", rmax, "largest r");
  verify->add_option("--json", json_path, "write the report here as well");

  auto* convert = app.add_subcommand("convert", "a-, b-, q-representation conversions");
  convert->add_option("--seq", seq, "sequence spec")->required();
  convert->add_option("--rep", rep_name, "target representation: b or q");
  convert->add_option("--s", s, "strength for the b-representation");
  convert->add_option("--horizon", horizon, "number of terms");
  convert->add_option("--json", json_path, "write the report here as well");

  auto* expand = app.add_subcommand("expand", "truncated series expansion");
  expand->add_option("--seq", seq, "sequence spec");
  expand->add_option("--num", num, "numerator coefficients, ascending");
  expand->add_option("--den", den, "denominator coefficients, ascending");
  expand->add_option("--trunc", trunc, "truncation order (env SFN_TRUNCATION)");
  expand->add_flag("--dwork", want_dwork, "run the exp(-int V) integrality test");
  expand->add_option("--json", json_path, "write the report here as well");

  auto* lab = app.add_subcommand("lab", "finite-precision p-adic error terms");
  lab->require_subcommand(1);
  auto add_lab_common = [&](CLI::App* cmd, bool needs_x) {
    if (needs_x) cmd->add_option("--x", x_str, "unit at p")->required();
    cmd->add_option("--p", p, "prime")->required();
    cmd->add_option("--K", precision, "working precision (0 = auto)");
    cmd->add_option("--json", json_path, "write the report here as well");
  };
  auto* lab_rho = lab->add_subcommand("rho", "the error term rho_n(m)");
  add_lab_common(lab_rho, true);
  lab_rho->add_option("--n", n_small, "level n");
  lab_rho->add_option("--m", m_small, "multiplier m");
  auto* lab_kappa = lab->add_subcommand("kappa", "ord_p(rho_1(1))");
  add_lab_common(lab_kappa, true);
  auto* lab_stab = lab->add_subcommand("stability", "rho stability across n");
  add_lab_common(lab_stab, true);
  lab_stab->add_option("--nmax", n_max_lab, "largest n");
  auto* lab_scale = lab->add_subcommand("mscaling", "rho scaling in m");
  add_lab_common(lab_scale, true);
  lab_scale->add_option("--mmax", mmax, "largest m");
  lab_scale->add_option("--n", n_small, "level n");
  auto* lab_probe = lab->add_subcommand("probe", "root-of-unity threshold probe");
  add_lab_common(lab_probe, true);
  lab_probe->add_option("--nmax", n_max_lab, "largest n");
  auto* lab_teich = lab->add_subcommand("teichmuller", "Teichmuller lift mod p^K");
  add_lab_common(lab_teich, true);
  auto* lab_vdm = lab->add_subcommand("vandermonde", "the linear-algebra contradiction");
  add_lab_common(lab_vdm, false);
  lab_vdm->add_option("--xs", xs_str, "units at p")->required();
  lab_vdm->add_option("--bs", bs_str, "coefficients, units at p")->required();
  lab_vdm->add_option("--mmax", mmax, "largest m");
  lab_vdm->add_option("--nmax", n_max_lab, "largest n");

  auto* catalog = app.add_subcommand("catalog", "built-in sequence corpus");
  catalog->add_flag("--list", want_list, "list known sequence specs");
  catalog->add_option("--seq", seq, "sequence spec to dump");
  catalog->add_option("--n", dump_n, "number of terms to dump");
  catalog->add_option("--csv", csv_path, "also export n,value lines here");
  catalog->add_option("--json", json_path, "write the report here as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify->parsed()) return run_classify(num, den, nmax, want_minton, json_path);
    if (verify->parsed()) return run_verify(seq, s, pmax, mmax, rmax, json_path);
    if (convert->parsed()) return run_convert(seq, rep_name, s, horizon, json_path);
    if (expand->parsed()) return run_expand(seq, num, den, trunc, want_dwork, json_path);
    if (catalog->parsed()) {
      if (!want_list && seq.empty()) throw CLI::ValidationError("need --list or --seq");
      return run_catalog(want_list, seq, dump_n, csv_path, json_path);
    }
    if (lab->parsed()) {
      sfn::Int x = x_str.empty() ? sfn::Int(1) : sfn::Int(x_str);
      unsigned K = precision ? precision : sfn::default_precision(x, p, n_max_lab);
      json report;
      report["schema"] = kSchema;
      report["p"] = p;
      report["K"] = K;
      bool ok = true;
      if (lab_rho->parsed()) {
        report["command"] = "lab/rho";
        sfn::PadicApprox r = sfn::rho(x, p, n_small, m_small, K);
        report["x"] = x.get_str();
        report["n"] = n_small;
        report["m"] = m_small;
        report["value"] = r.value.get_str();
        report["precision"] = r.precision;
        report["order"] = r.order.str();
      } else if (lab_kappa->parsed()) {
        report["command"] = "lab/kappa";
        report["x"] = x.get_str();
        report["kappa"] = sfn::kappa(x, p, K).str();
      } else if (lab_stab->parsed()) {
        report["command"] = "lab/stability";
        report["x"] = x.get_str();
        sfn::LabReport rep = sfn::check_rho_stability(x, p, n_max_lab, K);
        report["report"] = lab_report_to_json(rep);
        ok = rep.pass();
      } else if (lab_scale->parsed()) {
        report["command"] = "lab/mscaling";
        report["x"] = x.get_str();
        sfn::LabReport rep = sfn::check_rho_m_scaling(x, p, mmax, n_small, K);
        report["report"] = lab_report_to_json(rep);
        ok = rep.pass();
      } else if (lab_probe->parsed()) {
        report["command"] = "lab/probe";
        report["x"] = x.get_str();
        sfn::ProbeResult res = sfn::root_of_unity_probe(x, p, n_max_lab, K);
        report["consistent_with_root_of_unity"] = res.consistent;
        if (res.first_violation) report["first_violation"] = *res.first_violation;
        if (!res.caveat.empty()) report["caveat"] = res.caveat;
        json checks = json::array();
        for (const auto& c : res.checks) checks.push_back(lab_check_to_json(c));
        report["checks"] = std::move(checks);
        ok = res.consistent;
      } else if (lab_teich->parsed()) {
        report["command"] = "lab/teichmuller";
        report["x"] = x.get_str();
        report["lift"] = sfn::teichmuller(x, p, K).get_str();
      } else if (lab_vdm->parsed()) {
        report["command"] = "lab/vandermonde";
        std::vector<sfn::Int> xs, bs;
        for (const auto& t : xs_str) xs.emplace_back(t);
        for (const auto& t : bs_str) bs.emplace_back(t);
        sfn::VandermondeReport res =
            sfn::vandermonde_contradiction_demo(xs, bs, p, K, mmax, n_max_lab);
        report["family_holds"] = res.family_holds;
        if (res.first_failure)
          report["first_failure"] = {{"m", res.first_failure->first},
                                     {"n", res.first_failure->second}};
        report["det_unit"] = res.det_unit;
        report["kappa"] = res.kappa_used.str();
        json orders = json::array();
        for (const auto& o : res.rho_orders) orders.push_back(o.str());
        report["rho_orders"] = std::move(orders);
        report["rho_vanishes"] = res.rho_vanishes;
        report["notes"] = res.notes;
        report["conclusion"] = res.conclusion;
        json checks = json::array();
        for (const auto& c : res.family_checks) checks.push_back(lab_check_to_json(c));
        report["checks"] = std::move(checks);
        ok = res.family_holds;
      }
      return emit(report, json_path, ok);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
