#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "onesided/cf/alpha_source.hpp"
#include "onesided/errors.hpp"
#include "onesided/numeric/bigint.hpp"
#include "onesided/numeric/surd.hpp"

namespace onesided {

enum class PeriodicityKind { finite, periodic, unknown };

struct Periodicity {
  PeriodicityKind kind = PeriodicityKind::unknown;
  std::size_t last_index = 0;  // N for finite [a0; ..., a_N]
  std::size_t preperiod = 0;   // m
  std::size_t period = 0;      // h
};

enum class TermState { present, ended, exhausted };

namespace detail {

/// Value of the purely periodic continued fraction [b1; b2, ..., bh, b1, ...].
/// `field`, when given, is the squarefree radicand the value is known to live under.
inline QuadraticSurd purely_periodic_value(const std::vector<BigInt>& block, const BigInt& field = 0) {
  BigInt p_prev = 1, q_prev = 0, p = block.front(), q = 1;
  for (std::size_t i = 1; i < block.size(); ++i) {
    BigInt pn = block[i] * p + p_prev, qn = block[i] * q + q_prev;
    p_prev = std::exchange(p, pn);
    q_prev = std::exchange(q, qn);
  }
  // x = (p x + p_prev) / (q x + q_prev)  =>  q x^2 + (q_prev - p) x - p_prev = 0, positive root.
  BigInt b = p - q_prev;
  BigInt disc = b * b + 4 * q * p_prev;
  if (field > 1 && disc % field == 0) {
    BigInt k = isqrt(disc / field);
    if (k * k * field == disc) return QuadraticSurd::canonicalize(b, k, field, 2 * q);
  }
  return QuadraticSurd::canonicalize(b, 1, disc, 2 * q);
}

/// Smallest period of `block` that divides its length.
inline std::vector<BigInt> minimal_block(const std::vector<BigInt>& block) {
  const std::size_t h = block.size();
  for (std::size_t d = 1; d < h; ++d) {
    if (h % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < h && ok; ++i) ok = block[i] == block[i - d];
    if (ok) return {block.begin(), block.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return block;
}

}  // namespace detail

/// Memoized continued-fraction expansion of an AlphaSource.
///
/// Copies share one memo. Exact sources (rational, surd, explicit) are fully
/// analysed at construction; stream sources pull terms on demand under a
/// mutex, so a single expansion can be shared between threads.
class CFExpansion {
 public:
  explicit CFExpansion(AlphaSource source) : state_(std::make_shared<State>()) {
    std::visit([this](auto& s) { init(std::move(s)); }, source);
  }

  const Periodicity& periodicity() const noexcept { return state_->periodicity; }
  bool is_exact() const noexcept { return state_->periodicity.kind != PeriodicityKind::unknown; }
  bool is_finite() const noexcept { return state_->periodicity.kind == PeriodicityKind::finite; }
  bool is_periodic() const noexcept { return state_->periodicity.kind == PeriodicityKind::periodic; }

  /// True when an explicit input had a trailing 1 folded into the previous term.
  bool normalized() const noexcept { return state_->normalized; }

  const std::optional<BigInt>& term_bound() const noexcept { return state_->term_bound; }

  /// Exact value for rational and quadratic sources.
  const QuadraticSurd& value() const {
    if (!is_exact()) throw Error(Errc::exactness_required, "stream-backed expansion has no exact value");
    return state_->quotients.front();
  }

  TermState state_at(std::size_t j) const {
    const State& s = *state_;
    switch (s.periodicity.kind) {
      case PeriodicityKind::finite: return j <= s.periodicity.last_index ? TermState::present : TermState::ended;
      case PeriodicityKind::periodic: return TermState::present;
      case PeriodicityKind::unknown: break;
    }
    return pull_to(j) ? TermState::present : TermState::exhausted;
  }

  /// a_j, or nullopt past the end of a finite expansion or an exhausted stream.
  std::optional<BigInt> term(std::size_t j) const {
    const State& s = *state_;
    switch (s.periodicity.kind) {
      case PeriodicityKind::finite:
        if (j > s.periodicity.last_index) return std::nullopt;
        return s.terms[j];
      case PeriodicityKind::periodic: return periodic_term(j);
      case PeriodicityKind::unknown: break;
    }
    if (!pull_to(j)) return std::nullopt;
    std::lock_guard lock(state_->mutex);
    return state_->terms[j];
  }

  BigInt term_or_throw(std::size_t j) const {
    auto t = term(j);
    if (!t) throw Error(Errc::insufficient_terms, "term a_" + std::to_string(j) + " is not available");
    return *t;
  }

  /// Up to `count` leading terms (fewer for short expansions or exhausted streams).
  std::vector<BigInt> prefix(std::size_t count) const {
    std::vector<BigInt> out;
    for (std::size_t j = 0; j < count; ++j) {
      auto t = term(j);
      if (!t) break;
      out.push_back(std::move(*t));
    }
    return out;
  }

  /// Complete quotient x_j = [a_j; a_{j+1}, ...] for exact expansions.
  QuadraticSurd complete_quotient(std::size_t j) const {
    const State& s = *state_;
    switch (s.periodicity.kind) {
      case PeriodicityKind::finite:
        if (j > s.periodicity.last_index) throw Error(Errc::no_tail, "finite expansion ends before x_" + std::to_string(j));
        return s.quotients[j];
      case PeriodicityKind::periodic: {
        const std::size_t m = s.periodicity.preperiod, h = s.periodicity.period;
        if (j <= m + h) return s.quotients[j];
        return s.quotients[m + 1 + (j - m - 1) % h];
      }
      case PeriodicityKind::unknown: break;
    }
    throw Error(Errc::exactness_required, "complete quotients of a stream are not exact");
  }

  /// The repeating block a_{m+1}, ..., a_{m+h}.
  std::vector<BigInt> period_block() const {
    const auto& p = periodicity();
    std::vector<BigInt> out;
    for (std::size_t i = 1; i <= p.period; ++i) out.push_back(periodic_term(p.preperiod + i));
    return out;
  }

 private:
  struct State {
    mutable std::mutex mutex;
    Periodicity periodicity;
    std::vector<BigInt> terms;          // finite: all; periodic: a_0..a_{m+h}; stream: memo
    std::vector<QuadraticSurd> quotients;  // exact: x_0, x_1, ...
    bool normalized = false;
    std::optional<BigInt> term_bound;
    std::function<std::optional<BigInt>()> next;
    bool exhausted = false;
  };

  BigInt periodic_term(std::size_t j) const {
    const State& s = *state_;
    const std::size_t m = s.periodicity.preperiod, h = s.periodicity.period;
    if (j <= m + h) return s.terms[j];
    return s.terms[m + 1 + (j - m - 1) % h];
  }

  bool pull_to(std::size_t j) const {
    std::lock_guard lock(state_->mutex);
    State& s = *state_;
    while (s.terms.size() <= j && !s.exhausted) {
      auto t = s.next ? s.next() : std::nullopt;
      if (!t) {
        s.exhausted = true;
        break;
      }
      if (*t < 1) throw Error(Errc::invalid_term, "stream produced term " + t->str() + " < 1");
      s.terms.push_back(std::move(*t));
    }
    return s.terms.size() > j;
  }

  void init_finite(std::vector<BigInt> terms) {
    State& s = *state_;
    const std::size_t n = terms.size() - 1;
    s.quotients.assign(n + 1, QuadraticSurd());
    s.quotients[n] = QuadraticSurd(terms[n]);
    for (std::size_t j = n; j-- > 0;) {
      s.quotients[j] = QuadraticSurd(BigRational(terms[j]) + 1 / s.quotients[j + 1].to_rational());
    }
    s.terms = std::move(terms);
    s.periodicity = {PeriodicityKind::finite, n, 0, 0};
  }

  void init(BigRational x) {
    std::vector<BigInt> terms;
    BigInt num = numerator_of(x), den = denominator_of(x);
    while (true) {
      BigInt a = floor_div(num, den);
      terms.push_back(a);
      BigInt rem = num - a * den;
      if (rem == 0) break;
      num = std::exchange(den, rem);
    }
    init_finite(std::move(terms));
  }

  void init(QuadraticSurd x) {
    if (x.is_rational()) return init(x.to_rational());
    std::vector<BigInt> terms;
    std::vector<QuadraticSurd> quotients;
    std::map<std::tuple<BigInt, BigInt, BigInt>, std::size_t> seen;
    std::size_t first = 0, again = 0;
    while (true) {
      auto key = std::make_tuple(x.p(), x.q(), x.r());
      if (auto it = seen.find(key); it != seen.end()) {
        first = it->second;
        again = quotients.size();
        break;
      }
      seen.emplace(std::move(key), quotients.size());
      BigInt a = x.floor();
      terms.push_back(a);
      quotients.push_back(x);
      x = (x - QuadraticSurd(a)).reciprocal();
    }
    // x_first == x_again, so a_{k+h} = a_k for k >= first.
    const std::size_t h = again - first;
    const std::size_t m = first == 0 ? 0 : first - 1;
    while (terms.size() <= m + h) {
      terms.push_back(terms[first + (terms.size() - first) % h]);
      quotients.push_back(quotients[first + (quotients.size() - first) % h]);
    }
    std::vector<BigInt> prefix(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(m + 1));
    std::vector<BigInt> block(terms.begin() + static_cast<std::ptrdiff_t>(m + 1),
                              terms.begin() + static_cast<std::ptrdiff_t>(m + h + 1));
    init_periodic(std::move(prefix), std::move(block), quotients[m + 1]);
  }

  void init(ExplicitCF cf) {
    if (cf.prefix.empty()) throw Error(Errc::invalid_term, "continued fraction needs a0");
    auto check = [](const std::vector<BigInt>& v, std::size_t from) {
      for (std::size_t i = from; i < v.size(); ++i) {
        if (v[i] < 1) throw Error(Errc::invalid_term, "term " + v[i].str() + " < 1 after a0");
      }
    };
    check(cf.prefix, 1);
    check(cf.period, 0);
    if (cf.period.empty()) {
      if (cf.prefix.size() >= 2 && cf.prefix.back() == 1) {
        cf.prefix.pop_back();
        cf.prefix.back() += 1;
        state_->normalized = true;
      }
      return init_finite(std::move(cf.prefix));
    }
    std::vector<BigInt> block = detail::minimal_block(cf.period);
    init_periodic(std::move(cf.prefix), block, detail::purely_periodic_value(block));
  }

  void init(TermStream stream) {
    State& s = *state_;
    s.terms.push_back(std::move(stream.a0));
    s.next = std::move(stream.next);
    s.term_bound = std::move(stream.term_bound);
    s.periodicity = {PeriodicityKind::unknown, 0, 0, 0};
  }

  /// prefix = a_0..a_m, block = a_{m+1}..a_{m+h}, head = x_{m+1}.
  void init_periodic(std::vector<BigInt> prefix, std::vector<BigInt> block, QuadraticSurd head) {
    // Shortest preperiod: rotate while a_m == a_{m+h}.
    while (prefix.size() >= 2 && prefix.back() == block.back()) {
      std::rotate(block.rbegin(), block.rbegin() + 1, block.rend());
      prefix.pop_back();
      head = QuadraticSurd(block.front()) + head.reciprocal();
    }
    State& s = *state_;
    const std::size_t m = prefix.size() - 1, h = block.size();
    s.terms = prefix;
    s.terms.insert(s.terms.end(), block.begin(), block.end());
    s.quotients.assign(m + h + 1, QuadraticSurd());
    s.quotients[m + 1] = head;
    for (std::size_t j = m + 1; j < m + h; ++j) {
      s.quotients[j + 1] = (s.quotients[j] - QuadraticSurd(s.terms[j])).reciprocal();
    }
    for (std::size_t j = m + 1; j-- > 0;) {
      s.quotients[j] = QuadraticSurd(s.terms[j]) + s.quotients[j + 1].reciprocal();
    }
    s.periodicity = {PeriodicityKind::periodic, 0, m, h};
  }

  std::shared_ptr<State> state_;
};

/// Expands any AlphaSource; see CFExpansion.
inline CFExpansion cf_expand(AlphaSource alpha) { return CFExpansion(std::move(alpha)); }

}  // namespace onesided
