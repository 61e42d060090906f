#pragma once

#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onesided/classifier/classify.hpp"
#include "onesided/cli/alpha_spec.hpp"
#include "onesided/cli/render.hpp"
#include "onesided/spectral/gaps.hpp"

namespace onesided::cli {

enum ExitCode : int { ok = 0, usage = 2, oracle_mismatch = 3, exactness = 4, precision_boundary = 5 };

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::exactness_required:
    case Errc::insufficient_terms:
    case Errc::no_tail:
      return exactness;
    case Errc::undecided:
    case Errc::floor_undecided:
    case Errc::boundary_undecided:
      return precision_boundary;
    default:
      return usage;
  }
}

/// Test seam: lets a caller alter a classifier result before it is checked.
struct RunHooks {
  std::function<void(ClassificationResult&)> tamper;
};

struct Settings {
  std::string command;
  std::string alpha, a, b, u;
  std::size_t terms = 10;
  unsigned kind = 1;
  std::string side = "both";
  std::string q_max = "1";
  bool check = false;
  std::uint64_t m_max = 1000;
  unsigned digits = 12;
  unsigned precision_bits = kMaxBits;
  bool pretty = false;
};

namespace detail {

inline Json header(const Settings& s) {
  Json doc;
  doc["schema"] = "1";
  doc["command"] = s.command;
  return doc;
}

inline std::vector<Side> sides_of(const std::string& side) {
  if (side == "lower") return {Side::lower};
  if (side == "upper") return {Side::upper};
  return {Side::lower, Side::upper};
}

inline BigInt parse_q_max(const std::string& text) {
  Scanner s(text, 0);
  BigInt q = Scanner::from_digits(s.digits());
  s.expect_end();
  if (q < 1) throw Error(Errc::invalid_argument, "--q-max must be at least 1");
  return q;
}

inline QuadraticSurd exact_value_of(const std::string& spec, const char* what) {
  AlphaSource src = parse_alpha(spec);
  if (!is_exact_source(src)) {
    throw Error(Errc::exactness_required, std::string(what) + " must be exact (rat:, surd: or a closed cf:)");
  }
  return CFExpansion(std::move(src)).value();
}

inline void alpha_block(Json& doc, const Settings& s, const CFExpansion& cf) {
  doc["alpha"] = s.alpha;
  doc["value"] = cf.is_exact() ? Json(cf.value().str()) : Json(nullptr);
  doc["cf_prefix"] = cf_prefix_json(cf, std::max<std::size_t>(s.terms, 1));
  doc["periodicity"] = periodicity_json(cf);
}

inline Json run_expand(const Settings& s, std::ostream& err) {
  Json doc = header(s);
  CFExpansion cf(parse_alpha(s.alpha));
  doc["alpha"] = s.alpha;
  doc["value"] = cf.is_exact() ? Json(cf.value().str()) : Json(nullptr);

  std::vector<BigInt> terms;
  for (std::size_t j = 0; j < std::max<std::size_t>(s.terms, 1); ++j) {
    auto t = cf.term(j);
    if (!t) break;
    terms.push_back(*t);
  }
  const bool more = cf.state_at(terms.size()) != TermState::ended;
  RealValue v = alpha_value(cf);
  for (std::size_t i = 0; i < terms.size() && !v.is_exact(); ++i) v.refine();
  doc["decimal"] = decimal(v, s.digits);
  doc["cf_prefix"] = string_list(terms);
  doc["cf_text"] = cf_text(cf, terms, more);
  doc["periodicity"] = periodicity_json(cf);
  doc["normalized"] = cf.normalized();

  Json rows = Json::array();
  ConvergentTable t = convergents(cf, static_cast<long>(terms.size()) - 1);
  for (long n = 0; n <= t.last_index(); ++n) {
    Json row;
    row["n"] = n;
    row["p"] = t.p(n).str();
    row["q"] = t.q(n).str();
    row["identity"] = BigInt(t.p(n) * t.q(n - 1) - t.p(n - 1) * t.q(n)).str();
    rows.push_back(std::move(row));
  }
  doc["convergents"] = std::move(rows);
  Json diags = Json::array();
  if (terms.size() < s.terms) {
    diags.push_back(cf.is_finite() ? "expansion ends after " + std::to_string(terms.size()) + " terms"
                                   : "stream certified only " + std::to_string(terms.size()) + " terms");
  }
  if (cf.normalized()) diags.push_back("trailing 1 folded into the previous term");
  doc["diagnostics"] = std::move(diags);

  if (s.pretty) {
    err << "alpha " << s.alpha << " = " << doc["cf_text"].get<std::string>() << "\n";
    err << std::setw(4) << "n" << std::setw(24) << "p_n" << std::setw(24) << "q_n" << std::setw(6) << "id" << "\n";
    for (const auto& r : doc["convergents"]) {
      err << std::setw(4) << r["n"].get<long>() << std::setw(24) << r["p"].get<std::string>() << std::setw(24)
          << r["q"].get<std::string>() << std::setw(6) << r["identity"].get<std::string>() << "\n";
    }
  }
  return doc;
}

inline Json members_json(const CFExpansion& cf, const ClassificationResult& r, unsigned kind, Side side,
                         unsigned digits) {
  Json out = Json::array();
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    out.push_back(member_json(cf, r.members[i], kind, side, digits, r.witnesses[i]));
  }
  return out;
}

inline Json fraction_list(const std::vector<FractionRecord>& v) {
  Json out = Json::array();
  for (const auto& f : v) out.push_back(f.p.str() + "/" + f.q.str());
  return out;
}

inline void pretty_members(std::ostream& err, Side side, const Json& members, const Json& finiteness) {
  err << to_string(side) << " (" << finiteness["status"].get<std::string>() << ")\n";
  for (const auto& m : members) {
    err << "  " << std::setw(20) << (m["p"].get<std::string>() + "/" + m["q"].get<std::string>()) << std::setw(22)
        << m["origin"].get<std::string>() << "  " << m["weighted_error"].get<std::string>() << "\n";
  }
}

inline Json run_classify(const Settings& s, const RunHooks& hooks, std::ostream& err, int& code) {
  Json doc = header(s);
  CFExpansion cf(parse_alpha(s.alpha));
  const BigInt q_max = parse_q_max(s.q_max);
  alpha_block(doc, s, cf);
  doc["kind"] = s.kind;
  doc["q_max"] = q_max.str();

  Json members, finiteness, check, diags = Json::array();
  for (Side side : sides_of(s.side)) {
    Query q{cf, s.kind, side, q_max, 64};
    ClassificationResult r = classify(q);
    if (hooks.tamper) hooks.tamper(r);
    const std::string name(to_string(side));
    if (s.check && !cf.is_exact()) {
      throw Error(Errc::exactness_required, "--check needs an exact alpha; " + name + " side is " +
                                                std::string(to_string(r.finiteness.kind)) + " beyond q = " +
                                                r.finiteness.beyond.str() + " (" + r.finiteness.reason + ")");
    }
    members[name] = members_json(cf, r, s.kind, side, s.digits);
    finiteness[name] = finiteness_json(r.finiteness);
    for (const auto& d : r.diagnostics) diags.push_back(name + ": " + d);
    if (s.check) {
      ClassificationResult o = brute_force_oracle(q);
      std::vector<FractionRecord> missing, extra;
      for (const auto& f : o.members) {
        if (std::find(r.members.begin(), r.members.end(), f) == r.members.end()) missing.push_back(f);
      }
      for (const auto& f : r.members) {
        if (std::find(o.members.begin(), o.members.end(), f) == o.members.end()) extra.push_back(f);
      }
      Json c;
      c["agreed"] = missing.empty() && extra.empty();
      c["oracle_count"] = o.members.size();
      c["missing"] = fraction_list(missing);
      c["extra"] = fraction_list(extra);
      check[name] = std::move(c);
      if (!missing.empty() || !extra.empty()) code = oracle_mismatch;
    }
    if (s.pretty) pretty_members(err, side, members[name], finiteness[name]);
  }
  doc["members"] = std::move(members);
  doc["finiteness"] = std::move(finiteness);
  doc["check"] = s.check ? std::move(check) : Json(nullptr);
  if (s.kind == 3 && cf.is_periodic()) {
    QuadraticVerdict v = quadratic_kind3_verdict(cf);
    Json qv;
    qv["clause"] = std::string(to_string(v.clause));
    qv["rule"] = v.rule;
    qv["finite_side"] = std::string(to_string(v.finite_side));
    qv["bound"] = v.bound;
    qv["lower"] = finiteness_json(v.lower);
    qv["upper"] = finiteness_json(v.upper);
    doc["quadratic"] = std::move(qv);
  }
  doc["diagnostics"] = std::move(diags);
  return doc;
}

inline Json run_oracle(const Settings& s, std::ostream& err) {
  Json doc = header(s);
  CFExpansion cf(parse_alpha(s.alpha));
  const BigInt q_max = parse_q_max(s.q_max);
  alpha_block(doc, s, cf);
  doc["kind"] = s.kind;
  doc["q_max"] = q_max.str();
  Json members;
  for (Side side : sides_of(s.side)) {
    Query q{cf, s.kind, side, q_max, 64};
    ClassificationResult r = brute_force_oracle(q);
    const std::string name(to_string(side));
    members[name] = members_json(cf, r, s.kind, side, s.digits);
    if (s.pretty) pretty_members(err, side, members[name], finiteness_json(r.finiteness));
  }
  doc["members"] = std::move(members);
  doc["diagnostics"] = Json::array();
  return doc;
}

inline Json threshold_json(const std::optional<QuadraticSurd>& L, unsigned digits) {
  if (!L) return nullptr;
  Json out;
  out["exact"] = L->str();
  out["decimal"] = decimal(*L, digits);
  return out;
}

inline Json order_json(const std::optional<Ordering>& o) {
  if (!o) return nullptr;
  return *o == Ordering::less ? "below" : "above";
}

inline Json solution_json(const GapSolution& g, unsigned digits) {
  Json out;
  out["family"] = std::string(to_string(g.family));
  out["m"] = g.m;
  out["lhs"] = decimal(g.check.lhs, digits);
  out["rho"] = decimal(g.check.rho, digits);
  out["bits"] = g.check.bits;
  return out;
}

inline Json run_gaps(const Settings& s, std::ostream& err, int& code) {
  Json doc = header(s);
  LatticeParams p{exact_value_of(s.a, "--a"), exact_value_of(s.b, "--b"), QuadraticSurd(parse_decimal(s.u))};
  GapReport r = classify_gaps(p, s.m_max, s.precision_bits);
  doc["a"] = s.a;
  doc["b"] = s.b;
  doc["u"] = s.u;
  doc["m_max"] = s.m_max;
  doc["theta"] = r.theta.str();
  doc["L_a"] = threshold_json(r.L_a, s.digits);
  doc["L_b"] = threshold_json(r.L_b, s.digits);
  doc["rho_a"] = decimal(r.rho_a, s.digits);
  doc["rho_b"] = decimal(r.rho_b, s.digits);
  doc["rho_a_vs_L_a"] = order_json(r.rho_a_vs_L_a);
  doc["rho_b_vs_L_b"] = order_json(r.rho_b_vs_L_b);
  doc["classification"] = std::string(to_string(r.classification));
  Json sols = Json::array(), und = Json::array();
  std::size_t count_a = 0, count_b = 0;
  for (const auto& g : r.solutions) {
    sols.push_back(solution_json(g, s.digits));
    ++(g.family == GapFamily::a ? count_a : count_b);
  }
  for (const auto& g : r.undecided) und.push_back(solution_json(g, s.digits));
  doc["solution_counts"] = {{"A", count_a}, {"B", count_b}};
  doc["solutions"] = std::move(sols);
  doc["undecided"] = std::move(und);
  doc["diagnostics"] = r.diagnostics;
  if (!r.undecided.empty()) code = precision_boundary;
  if (s.pretty) {
    err << "classification " << to_string(r.classification) << "\n";
    for (const auto& g : doc["solutions"]) {
      err << "  " << g["family"].get<std::string>() << std::setw(12) << g["m"].get<std::uint64_t>() << "  "
          << g["lhs"].get<std::string>() << " < " << g["rho"].get<std::string>() << "\n";
    }
  }
  return doc;
}

inline Json error_document(const std::string& command, std::string_view code, const std::string& message) {
  Json doc;
  doc["schema"] = "1";
  doc["command"] = command;
  doc["error"] = {{"code", std::string(code)}, {"message", message}};
  return doc;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const RunHooks& hooks = {}) {
  Settings s;
  CLI::App app{"Best one-sided Diophantine approximations and lattice spectral gaps", "onesided"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  auto global = [&](CLI::App* sub) {
    sub->add_option("--digits", s.digits, "decimal places in rendered values")->check(CLI::Range(0u, 200u));
    sub->add_option("--precision-bits", s.precision_bits, "largest working precision for certified evaluation")
        ->check(CLI::Range(64u, 1u << 20));
    sub->add_flag("--pretty", s.pretty, "human-readable table on standard error");
  };
  auto* expand = app.add_subcommand("expand", "continued fraction, periodicity and convergents");
  expand->add_option("--alpha", s.alpha, "rat:, surd:, cf: or dec: specification")->required();
  expand->add_option("--terms", s.terms, "number of terms");
  global(expand);

  auto add_query = [&](CLI::App* sub) {
    sub->add_option("--alpha", s.alpha, "rat:, surd:, cf: or dec: specification")->required();
    sub->add_option("--kind", s.kind, "kind ell >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--side", s.side, "lower, upper or both")->check(CLI::IsMember({"lower", "upper", "both"}));
    sub->add_option("--q-max", s.q_max, "largest denominator")->required();
    global(sub);
  };
  auto* classify_cmd = app.add_subcommand("classify", "best one-sided approximations by criterion");
  add_query(classify_cmd);
  classify_cmd->add_flag("--check", s.check, "compare against the brute-force oracle");
  auto* oracle_cmd = app.add_subcommand("oracle", "best one-sided approximations by exhaustive search");
  add_query(oracle_cmd);

  auto* gaps = app.add_subcommand("gaps", "spectral gaps of a rectangular lattice with vertex coupling");
  gaps->add_option("--a", s.a, "first edge length (exact spec)")->required();
  gaps->add_option("--b", s.b, "second edge length (exact spec)")->required();
  gaps->add_option("--u", s.u, "coupling constant as a decimal")->required();
  gaps->add_option("--m-max", s.m_max, "largest m examined in each family");
  global(gaps);

  std::vector<std::string> argv_store{"onesided"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << detail::error_document("", "UsageError", e.what()).dump() << "\n";
    return usage;
  }

  for (auto* sub : app.get_subcommands()) s.command = sub->get_name();
  int code = ok;
  try {
    Json doc;
    if (s.command == "expand") doc = detail::run_expand(s, err);
    else if (s.command == "classify") doc = detail::run_classify(s, hooks, err, code);
    else if (s.command == "oracle") doc = detail::run_oracle(s, err);
    else doc = detail::run_gaps(s, err, code);
    out << doc.dump(2) << "\n";
    return code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    out << detail::error_document(s.command, to_string(e.code()), e.what()).dump(2) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    out << detail::error_document(s.command, "InvalidArgument", e.what()).dump(2) << "\n";
    return usage;
  }
}

}  // namespace onesided::cli
