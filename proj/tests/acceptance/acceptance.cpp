// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../test_support.hpp"
#include "onesided/classifier/classify.hpp"
#include "onesided/cli/app.hpp"
#include "onesided/spectral/gaps.hpp"

using namespace onesided;
using namespace testsupport;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = budget_s <= 0 || s <= budget_s;
  if (!in_time) v.detail += "; over time budget";
  const bool pass = v.pass && in_time;
  if (!pass) ++failures;
  if (budget_s > 0) {
    std::printf("AC%d %s %s [%.2fs of %.0fs]: %s\n", id, pass ? "PASS" : "FAIL", name, s, budget_s, v.detail.c_str());
  } else {
    std::printf("AC%d %s %s [%.2fs]: %s\n", id, pass ? "PASS" : "FAIL", name, s, v.detail.c_str());
  }
  std::fflush(stdout);
}

using Set = std::set<std::pair<BigInt, BigInt>>;

Set set_of(const ClassificationResult& r) {
  Set s;
  for (const auto& m : r.members) s.emplace(m.p, m.q);
  return s;
}

std::string list(const ClassificationResult& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    s += (i ? ", " : "") + r.members[i].p.str() + "/" + r.members[i].q.str();
  }
  return s + "}";
}

std::vector<std::pair<long long, long long>> pairs(std::initializer_list<std::pair<long long, long long>> v) { return v; }

bool equals(const ClassificationResult& r, std::vector<std::pair<long long, long long>> expected) {
  if (r.members.size() != expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (r.members[i].p != expected[i].first || r.members[i].q != expected[i].second) return false;
  }
  return true;
}

double as_double(const QuadraticSurd& x) { return std::stod(to_decimal(x, 17)); }

// 100 rationals with denominators up to 50 and 100 surds with small radicands and coefficients.
std::vector<AlphaSource> oracle_corpus() {
  std::mt19937_64 rng(20240611);
  std::vector<AlphaSource> out;
  for (int i = 0; i < 200; ++i) {
    if (i % 2 == 0) out.emplace_back(random_rational(rng, 50));
    else out.emplace_back(random_surd(rng, 20));
  }
  return out;
}

// 100 expansions: a third surds, a third long finite ones, a third explicit periodic ones.
CFExpansion identity_sample(std::mt19937_64& rng, int i) {
  if (i % 3 == 0) return CFExpansion(random_surd(rng));
  if (i % 3 == 1) {
    std::uniform_int_distribution<long long> t(1, 30), len(45, 60);
    std::vector<long long> terms{t(rng) - 15};
    for (int k = 0, n = static_cast<int>(len(rng)); k < n; ++k) terms.push_back(t(rng));
    if (terms.back() == 1) terms.back() = 2;
    return CFExpansion(cf_of(terms));
  }
  std::uniform_int_distribution<long long> t(1, 9), len(1, 4);
  std::vector<long long> prefix{t(rng)}, period;
  for (long long k = 0, n = len(rng); k < n; ++k) prefix.push_back(t(rng));
  for (long long k = 0, n = len(rng); k < n; ++k) period.push_back(t(rng));
  return CFExpansion(cf_of(prefix, period));
}

std::optional<RationalInterval> certified_lhs(const BigInt& m, const CFExpansion& theta) {
  for (unsigned bits : {1024u, 4096u}) {
    if (auto v = gap_lhs(m, theta, bits)) return v;
  }
  return std::nullopt;
}

std::size_t gap_count(const std::string& u, const std::string& m_max, std::string& classification) {
  std::ostringstream out, err;
  int code = cli::run({"gaps", "--a", "rat:1/1", "--b", "surd:(0+1*sqrt(5))/1", "--u", u, "--m-max", m_max}, out, err);
  if (code != 0) throw std::runtime_error("gaps exited " + std::to_string(code) + ": " + err.str());
  auto doc = cli::Json::parse(out.str());
  classification = doc["classification"].get<std::string>();
  return doc["solutions"].size();
}

}  // namespace

int main() {
  std::map<std::tuple<int, unsigned, int>, Set> corpus_sets;  // (alpha index, kind, side)

  criterion(1, "pi example, kinds 1 and 2 upper, q <= 7", 1.0, [] {
    const auto expected = pairs({{4, 1}, {7, 2}, {10, 3}, {13, 4}, {16, 5}, {19, 6}, {22, 7}});
    bool ok = true;
    std::string detail;
    for (const char* spec : {"cf:[3;7,15,1,292,1]", "cf:[3;7,15,1,292,1,1,1,2,1,3,...]"}) {
      CFExpansion cf(cli::parse_alpha(spec));
      auto k1 = classify(Query{cf, 1, Side::upper, 7, 64});
      auto k2 = classify(Query{cf, 2, Side::upper, 7, 64});
      ok = ok && equals(k1, expected) && equals(k2, expected) && set_of(k1) == set_of(k2);
      detail += std::string(detail.empty() ? "" : "; ") + spec + " -> " + list(k1) + " / " + list(k2);
    }
    return Verdict{ok, detail};
  });

  criterion(2, "sqrt5 kind 2, q <= 5, and vertical distances", 1.0, [] {
    CFExpansion cf(sqrt_of(5));
    auto lo = classify(Query{cf, 2, Side::lower, 5, 64});
    auto up = classify(Query{cf, 2, Side::upper, 5, 64});
    bool ok = equals(lo, pairs({{2, 1}, {11, 5}})) && equals(up, pairs({{3, 1}, {5, 2}, {7, 3}, {9, 4}}));
    const double lower_ref[] = {0.24, 0.47, 0.71, 0.94, 0.18}, upper_ref[] = {0.76, 0.53, 0.29, 0.06, 0.82};
    double worst = 0;
    for (int q = 1; q <= 5; ++q) {
      QuadraticSurd x = QuadraticSurd(BigInt(q)) * cf.value();
      const double below = as_double(x - QuadraticSurd(x.floor())), above = as_double(QuadraticSurd(x.ceil()) - x);
      worst = std::max({worst, std::abs(below - lower_ref[q - 1]), std::abs(above - upper_ref[q - 1])});
    }
    ok = ok && worst <= 0.005;
    return Verdict{ok, "lower " + list(lo) + ", upper " + list(up) + ", largest distance deviation " +
                           std::to_string(worst)};
  });

  criterion(3, "criterion equals oracle, 200 alpha x kinds 1-5 x both sides, q <= 500", 120.0, [&] {
    auto corpus = oracle_corpus();
    std::size_t runs = 0, mismatches = 0;
    std::string first;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      CFExpansion cf(corpus[i]);
      for (unsigned kind = 1; kind <= 5; ++kind) {
        for (Side side : {Side::lower, Side::upper}) {
          Query q{cf, kind, side, 500, 64};
          Set crit = set_of(classify(q)), oracle = set_of(brute_force_oracle(q));
          corpus_sets[{static_cast<int>(i), kind, static_cast<int>(side)}] = crit;
          ++runs;
          if (crit != oracle) {
            ++mismatches;
            if (first.empty()) first = "; first mismatch " + cf.value().str() + " kind " + std::to_string(kind);
          }
        }
      }
    }
    return Verdict{mismatches == 0, std::to_string(runs) + " runs, " + std::to_string(mismatches) + " mismatches" + first};
  });

  criterion(4, "continued fraction identities, 100 expansions, n <= 40", 30.0, [] {
    std::mt19937_64 rng(77);
    std::size_t checks = 0, bad = 0;
    for (int i = 0; i < 100; ++i) {
      CFExpansion cf = identity_sample(rng, i);
      ConvergentTable t = convergents(cf, 40);
      const long top = std::min<long>(40, t.last_index());
      const QuadraticSurd alpha = cf.value();
      for (long n = 0; n <= top; ++n) {
        ++checks;
        if (t.q(n) * t.p(n - 1) - t.p(n) * t.q(n - 1) != (n % 2 == 0 ? 1 : -1)) ++bad;
        if (n < 1) continue;
        std::vector<BigInt> rev;
        for (long k = n; k >= 1; --k) rev.push_back(cf.term_or_throw(static_cast<std::size_t>(k)));
        if (CFExpansion(ExplicitCF{rev, {}}).value().to_rational() != BigRational(t.q(n), t.q(n - 1))) ++bad;
        if (cf.is_finite() && n >= static_cast<long>(cf.periodicity().last_index)) continue;
        QuadraticSurd closed = (QuadraticSurd(BigRational(t.q(n) * t.q(n))) * p_quantity(cf, n).exact()).reciprocal();
        if (n % 2) closed = -closed;
        const QuadraticSurd err = approx_error(cf, n).exact();
        if (err != closed || err != alpha - QuadraticSurd(BigRational(t.p(n), t.q(n)))) ++bad;
      }
    }
    return Verdict{bad == 0, std::to_string(checks) + " indices checked, " + std::to_string(bad) + " violations"};
  });

  criterion(5, "kind monotonicity and kind 1 = kind 2 on the criterion corpus", 0, [&] {
    if (corpus_sets.empty()) return Verdict{false, "corpus from AC3 unavailable"};
    std::size_t subset_checks = 0, subset_bad = 0, equal_bad = 0;
    for (int i = 0; i < 200; ++i) {
      for (int side = 0; side < 2; ++side) {
        if (corpus_sets.at({i, 1, side}) != corpus_sets.at({i, 2, side})) ++equal_bad;
        for (unsigned kind = 2; kind <= 5; ++kind) {
          for (unsigned smaller = 1; smaller < kind; ++smaller) {
            const Set& wide = corpus_sets.at({i, smaller, side});
            for (const auto& f : corpus_sets.at({i, kind, side})) {
              ++subset_checks;
              if (!wide.count(f)) ++subset_bad;
            }
          }
        }
      }
    }
    return Verdict{subset_bad == 0 && equal_bad == 0,
                   std::to_string(subset_checks) + " inclusions, " + std::to_string(subset_bad) + " violated; " +
                       std::to_string(equal_bad) + " of 400 kind-1/kind-2 pairs differ"};
  });

  criterion(6, "quadratic 3rd-kind verdicts, 50 surds, oracle to 10^4", 300.0, [] {
    std::mt19937_64 rng(6);
    int exactly_one = 0, both_finite = 0, both_infinite = 0, bound_bad = 0, count_bad = 0;
    for (int i = 0; i < 50; ++i) {
      CFExpansion cf(random_surd(rng));
      QuadraticVerdict v = quadratic_kind3_verdict(cf);
      const bool lf = v.lower.kind == FinitenessKind::proven_finite, uf = v.upper.kind == FinitenessKind::proven_finite;
      if (lf != uf) ++exactly_one;
      if (lf && uf) ++both_finite;
      if (!lf && !uf) ++both_infinite;
      auto oracle = brute_force_oracle(Query{cf, 3, v.finite_side, 10000, 64});
      if (oracle.members.size() > v.bound) ++bound_bad;
      for (Side s : {Side::lower, Side::upper}) {
        const Finiteness& f = v.side(s);
        if (f.kind != FinitenessKind::proven_finite) continue;
        if (brute_force_oracle(Query{cf, 3, s, 10000, 64}).members.size() > *f.total) ++count_bad;
      }
    }
    auto root5 = classify(Query{CFExpansion(sqrt_of(5)), 3, Side::upper, 10000, 64});
    auto root5_oracle = brute_force_oracle(Query{CFExpansion(sqrt_of(5)), 3, Side::upper, 10000, 64});
    const bool root5_ok = equals(root5, pairs({{3, 1}, {9, 4}})) && set_of(root5) == set_of(root5_oracle);
    const bool ok = exactly_one == 50 && bound_bad == 0 && count_bad == 0 && root5_ok;
    return Verdict{ok, "exactly one side finite: " + std::to_string(exactly_one) + "/50 (both finite: " +
                           std::to_string(both_finite) + ", both infinite: " + std::to_string(both_infinite) +
                           "); bound violations " + std::to_string(bound_bad) + "; oracle above exact count " +
                           std::to_string(count_bad) + "; sqrt5 upper " + list(root5)};
  });

  criterion(7, "threshold L and tangent-inflated sequence", 10.0, [] {
    bool ok = gap_threshold_L(CFExpansion(sqrt_of(5))) == QuadraticSurd::canonicalize(0, 1, 5, 10) &&
              gap_threshold_L(CFExpansion(golden())) == QuadraticSurd::canonicalize(0, 1, 5, 5);
    std::string detail = ok ? "L(sqrt5) = 1/(2 sqrt5), L(phi) = 1/sqrt5" : "threshold mismatch";
    for (const QuadraticSurd& theta_value : {sqrt_of(5), golden()}) {
      CFExpansion theta(theta_value);
      const QuadraticSurd L = gap_threshold_L(theta);
      ConvergentTable t = convergents(theta, 120);
      auto members = enumerate_kind_3(Query{theta, 3, Side::lower, t.q(120), 64}).members;
      if (members.size() < 21) return Verdict{false, "too few 3rd-kind lower approximations"};
      const FractionRecord& m20 = members[19];
      const QuadraticSurd product = QuadraticSurd(m20.q) * (QuadraticSurd(m20.q) * theta_value - QuadraticSurd(m20.p));
      const QuadraticSurd gap = product - L;
      const bool near = gap.sign() >= 0 && gap < QuadraticSurd(BigRational(1, 1000000));
      bool decreasing = true;
      std::optional<RationalInterval> prev;
      for (std::size_t i = 0; i < 20; ++i) {
        auto lhs = certified_lhs(members[i].q, theta);
        if (!lhs || (prev && !(lhs->hi() < prev->lo()))) decreasing = false;
        prev = lhs;
      }
      ok = ok && near && decreasing;
      detail += "; theta = " + theta_value.str() + ": m_20 = " + m20.q.str() + ", product - L = " +
                to_decimal(gap, 15) + (decreasing ? ", strictly decreasing" : ", NOT decreasing");
    }
    return Verdict{ok, detail};
  });

  criterion(8, "gaps scenarios: Zero finds none to 10^5, Infinite grows when m_max doubles", 60.0, [] {
    std::string c_zero, c_inf, c_inf2, c_inf10;
    const std::size_t zero = gap_count("0.9869", "100000", c_zero);
    const std::size_t at_1e4 = gap_count("2.9608", "10000", c_inf);
    const std::size_t at_2e4 = gap_count("2.9608", "20000", c_inf2);
    const std::size_t at_1e5 = gap_count("2.9608", "100000", c_inf10);
    const bool ok = c_zero == "Zero" && zero == 0 && c_inf == "Infinite" && at_1e4 > 0 && at_2e4 > at_1e4;
    return Verdict{ok, "u = 0.9869: " + c_zero + " with " + std::to_string(zero) + " gaps up to 10^5; u = 2.9608: " +
                           c_inf + " with " + std::to_string(at_1e4) + " gaps up to 10^4, " + std::to_string(at_2e4) +
                           " up to 2*10^4, " + std::to_string(at_1e5) + " up to 10^5"};
  });

  criterion(9, "Monte Carlo: >= 5 lower 3rd-kind members below 10^6 in >= 90 of 100", 0, [] {
    std::mt19937_64 rng(9);
    int hits = 0;
    std::size_t fewest = SIZE_MAX;
    for (int i = 0; i < 100; ++i) {
      std::vector<long long> terms{0};
      for (int j = 1; j < 200; ++j) {
        std::uniform_int_distribution<long long> odd(1, j), even(1, 4);
        terms.push_back(j % 2 ? odd(rng) : even(rng));
      }
      auto r = enumerate_kind_3(Query{CFExpansion(cf_of(terms)), 3, Side::lower, 1000000, 64});
      fewest = std::min(fewest, r.members.size());
      if (r.members.size() >= 5) ++hits;
    }
    return Verdict{hits >= 90, std::to_string(hits) + "/100 with at least 5 members (fewest " + std::to_string(fewest) + ")"};
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
