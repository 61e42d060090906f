#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "onesided/classifier/types.hpp"

namespace onesided::detail {

inline std::string n_str(long n) { return std::to_string(n); }

/// Makes sure row n of the table exists. False when the expansion cannot
/// supply a_n (past the end of a finite one, or an exhausted stream).
inline bool ensure_row(ConvergentTable& t, const CFExpansion& cf, long n) {
  while (t.last_index() < n) {
    if (!t.extend(cf)) return false;
  }
  return true;
}

inline void mark_incomplete(ClassificationResult& out, std::string why) {
  out.complete = false;
  out.diagnostics.push_back(std::move(why));
}

/// Appends alpha itself (error 0) when alpha is rational and q_N <= q_max.
inline void add_exact_hit(ClassificationResult& out, const CFExpansion& cf, ConvergentTable& t, const BigInt& q_max) {
  if (!cf.is_finite()) return;
  const auto last = static_cast<long>(cf.periodicity().last_index);
  ensure_row(t, cf, last);
  if (t.q(last) > q_max) return;
  FractionRecord hit{t.p(last), t.q(last), {OriginKind::convergent, last, 0}};
  if (std::find(out.members.begin(), out.members.end(), hit) != out.members.end()) return;
  out.add(std::move(hit), "exact hit: alpha itself, weighted error 0");
}

inline void sort_members(ClassificationResult& out) {
  std::vector<std::size_t> idx(out.members.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return out.members[a].q < out.members[b].q; });
  std::vector<FractionRecord> m;
  std::vector<std::string> w;
  for (auto i : idx) {
    m.push_back(std::move(out.members[i]));
    w.push_back(std::move(out.witnesses[i]));
  }
  out.members = std::move(m);
  out.witnesses = std::move(w);
}

/// Kinds 1 and 2: (p_n r + p_{n-1}) / (q_n r + q_{n-1}) with 0 <= r < a_{n+1},
/// n odd for the lower side, n even without (n, r) = (0, 0) for the upper side.
inline ClassificationResult kind12_members(const Query& query) {
  const CFExpansion& cf = query.alpha;
  ClassificationResult out;
  ConvergentTable t;
  const long start = query.side == Side::lower ? 1 : 0;
  for (long n = start;; n += 2) {
    if (!ensure_row(t, cf, n - 1)) {
      if (!cf.is_finite()) mark_incomplete(out, "stream exhausted before convergent " + n_str(n - 1));
      break;
    }
    if (t.q(n - 1) > query.q_max) break;
    if (!ensure_row(t, cf, n)) {
      // n - 1 is the last index: p_{n-1}/q_{n-1} is alpha, added as the exact hit.
      if (!cf.is_finite()) mark_incomplete(out, "stream exhausted before convergent " + n_str(n));
      break;
    }
    const TermState next = cf.state_at(static_cast<std::size_t>(n + 1));
    const long r0 = n == 0 ? 1 : 0;
    if (r0 == 0) {
      out.add({t.p(n - 1), t.q(n - 1), {OriginKind::convergent, n - 1, 0}},
              "r = 0 at n = " + n_str(n) + ": convergent " + n_str(n - 1));
    }
    if (next == TermState::ended) break;  // n is the last index; alpha follows as the exact hit
    if (next == TermState::exhausted) {
      mark_incomplete(out, "stream exhausted before a_" + n_str(n + 1));
      break;
    }
    const BigInt a = cf.term_or_throw(static_cast<std::size_t>(n + 1));
    for (BigInt r = std::max<BigInt>(r0, 1); r < a; ++r) {
      BigInt q = t.q(n) * r + t.q(n - 1);
      if (q > query.q_max) break;
      out.add({t.p(n) * r + t.p(n - 1), std::move(q), {OriginKind::semiconvergent, n, r}},
              "semiconvergent n = " + n_str(n) + ", r = " + r.str() + " < a_" + n_str(n + 1) + " = " + a.str());
    }
  }
  add_exact_hit(out, cf, t, query.q_max);
  sort_members(out);
  return out;
}

/// Kinds ell >= 3 over convergents of one parity (even for lower, odd for
/// upper). For ell = 3 a convergent is kept iff P(k) < P(n) for every earlier
/// candidate k of the same parity; for ell >= 4 iff C_n(ell) < C_k(ell) for
/// every earlier candidate, where C_n(ell) = q_n^(ell-3) / P(n) is its
/// weighted error. The upper side always starts with ceil(alpha)/1; for
/// ell >= 4 its error ceil(alpha) - alpha competes with the odd convergents.
inline ClassificationResult convergent_members(const Query& query) {
  const CFExpansion& cf = query.alpha;
  const unsigned ell = query.kind;
  const bool lower = query.side == Side::lower;
  ClassificationResult out;
  ConvergentTable t;
  ensure_row(t, cf, 0);
  const bool integer_alpha = cf.is_finite() && cf.periodicity().last_index == 0;

  std::vector<RealValue> earlier;  // criterion values of earlier candidates
  std::vector<long> earlier_n;

  if (!lower && !integer_alpha) {
    const BigInt ceil_p = t.p(0) + 1;
    const TermState s1 = cf.state_at(1);
    const bool coincides = s1 == TermState::present && cf.term_or_throw(1) == 1;
    if (!coincides) {
      out.add({ceil_p, 1, {OriginKind::ceil_unit, 0, 1}}, "ceil(alpha)/1 is always a best upper approximation");
      if (ell >= 4 && s1 == TermState::present) {
        earlier.push_back(-(alpha_value(cf) + BigRational(-ceil_p)));
        earlier_n.push_back(-1);
      }
    }
    if (s1 == TermState::exhausted) {
      mark_incomplete(out, "stream exhausted before a_1");
      return out;
    }
  }

  const long last = cf.is_finite() ? static_cast<long>(cf.periodicity().last_index) : -1;
  for (long n = lower ? 0 : 1;; n += 2) {
    if (!ensure_row(t, cf, n)) {
      if (!cf.is_finite()) mark_incomplete(out, "stream exhausted before convergent " + n_str(n));
      break;
    }
    if (t.q(n) > query.q_max) break;
    if (n == last) break;  // exact hit, added below
    RealValue value;
    try {
      value = p_quantity(cf, n);
      if (ell >= 4) value = value.reciprocal().scaled(BigRational(ipow(t.q(n), ell - 3)));
    } catch (const Error& e) {
      if (e.code() != Errc::insufficient_terms) throw;
      mark_incomplete(out, "cannot bound P(" + n_str(n) + "): " + e.what());
      break;
    }
    bool member = true;
    for (std::size_t i = 0; i < earlier.size() && member; ++i) {
      Ordering o = ell == 3 ? compare(earlier[i], value, query.budget) : compare(value, earlier[i], query.budget);
      if (o == Ordering::undecided) {
        mark_incomplete(out, "comparison undecided at n = " + n_str(n) + " against " +
                                 (earlier_n[i] < 0 ? std::string("ceil(alpha)/1") : "n = " + n_str(earlier_n[i])));
        sort_members(out);
        return out;
      }
      member = o == Ordering::less;
    }
    if (member) {
      std::string why;
      if (earlier.empty()) {
        why = "first candidate of its parity";
      } else if (ell == 3) {
        why = "P(" + n_str(n) + ") exceeds P(k) for every earlier " + (lower ? "even" : "odd") + " k";
      } else {
        why = "C_" + n_str(n) + "(" + std::to_string(ell) + ") is below every earlier candidate";
      }
      out.add({t.p(n), t.q(n), {OriginKind::convergent, n, 0}}, std::move(why));
    }
    earlier.push_back(std::move(value));
    earlier_n.push_back(n);
  }
  add_exact_hit(out, cf, t, query.q_max);
  sort_members(out);
  return out;
}

}  // namespace onesided::detail
