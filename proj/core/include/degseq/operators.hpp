#pragma once

// The recursion operators P, Y, R on probability tables, the bad() helper,
// Pi_mu membership, and fixed-point iteration of C(p,y) = (p^, Y(p^,y)) with
// p^ = P(p, R(p,y)).
//
// Operators are templates over a table source. A source exposes
//   using Scalar; using Handle;
//   const GraphClass& graph_class() const;
//   int degree(const Handle&, Vertex) const;
//   Handle minus(const Handle&, Vertex) const;   // d - e_x, degree >= 1
//   bool null(const Handle&) const;              // known unrealisable
//   Scalar p(Vertex a, Vertex v, const Handle&) const;
//   Scalar y(Vertex a, Vertex v, Vertex b, const Handle&) const;
//   Scalar r(Vertex a, Vertex b, const Handle&) const;
//   std::string describe(const Handle&) const;
// Only the members an operator touches need to exist.
//
// Lookup conventions: p_av(d) = 0 when d_a = 0 or d_v = 0 or d is known
// unrealisable; y_avb(d) = 0 likewise or when d_v < 2.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "degseq/errors.hpp"
#include "degseq/model.hpp"

namespace degseq {

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static bool near_zero(double x) { return std::abs(x) < 1e-12; }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
  static constexpr const char* name = "float";
};

template <>
struct ScalarTraits<mpq_class> {
  static bool near_zero(const mpq_class& x) { return sgn(x) == 0; }
  static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
  static double to_double(const mpq_class& x) { return x.get_d(); }
  static constexpr const char* name = "exact";
};

namespace detail {

inline std::string key_text(const char* what, std::initializer_list<Vertex> vs, const std::string& seq) {
  std::string s = std::string(what) + "(";
  bool first = true;
  for (Vertex x : vs) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + ") at " + seq;
}

template <class Src>
typename Src::Scalar lookup_p(const Src& src, Vertex a, Vertex v, const typename Src::Handle& h) {
  using Scalar = typename Src::Scalar;
  if (src.degree(h, a) == 0 || src.degree(h, v) == 0 || src.null(h)) return Scalar(0);
  return src.p(a, v, h);
}

template <class Src>
typename Src::Scalar lookup_y(const Src& src, Vertex a, Vertex v, Vertex b,
                              const typename Src::Handle& h) {
  using Scalar = typename Src::Scalar;
  if (src.degree(h, a) == 0 || src.degree(h, b) == 0 || src.degree(h, v) < 2 || src.null(h))
    return Scalar(0);
  return src.y(a, v, b, h);
}

}  // namespace detail

// (1/d_a)(sum_{v in A(a)\A(b)} p_av(d) + sum_{v in A(a)&A(b)} y_avb(d)); 0 if a == b.
template <class Src>
typename Src::Scalar bad_fn(const Src& src, Vertex a, Vertex b, const typename Src::Handle& h) {
  using Scalar = typename Src::Scalar;
  if (a == b) return Scalar(0);
  const GraphClass& cls = src.graph_class();
  int da = src.degree(h, a);
  if (da == 0)
    throw SingularityError(detail::key_text("bad", {a, b}, src.describe(h)) + ": d_a = 0");
  Scalar acc(0);
  for (Vertex v = 1; v <= cls.vertex_count(); ++v) {
    if (!cls.allowable(a, v)) continue;
    if (cls.allowable(b, v))
      acc += detail::lookup_y(src, a, v, b, h);
    else
      acc += detail::lookup_p(src, a, v, h);
  }
  acc /= da;
  return acc;
}

// R(p,y)_ab(d) = (d_a/d_b) (1 - bad(a,b,d-e_b)) / (1 - bad(b,a,d-e_a)).
template <class Src>
typename Src::Scalar apply_R(const Src& src, const typename Src::Handle& h, Vertex a, Vertex b) {
  using Scalar = typename Src::Scalar;
  const GraphClass& cls = src.graph_class();
  if (!cls.valid(a) || !cls.valid(b) || !cls.same_part(a, b))
    throw PreconditionError("apply_R: a and b must lie in the same part");
  if (a == b) return Scalar(1);
  int da = src.degree(h, a), db = src.degree(h, b);
  if (da == 0) return Scalar(0);
  if (db == 0)
    throw SingularityError(detail::key_text("R", {a, b}, src.describe(h)) + ": d_b = 0");
  Scalar num = Scalar(1) - bad_fn(src, a, b, src.minus(h, b));
  Scalar den = Scalar(1) - bad_fn(src, b, a, src.minus(h, a));
  if (ScalarTraits<Scalar>::near_zero(den))
    throw SingularityError(detail::key_text("R", {a, b}, src.describe(h)) +
                           ": 1 - bad(b,a,d-e_a) vanishes");
  Scalar out = Scalar(da) / Scalar(db) * num / den;
  return out;
}

// P(p,r)_av(d) = d_v (sum_{b in A(v)} r_ba(d-e_v) (1-p_bv(d-e_b-e_v)) / (1-p_av(d-e_a-e_v)))^{-1},
// evaluated as d_v (1 - p_av(d-e_a-e_v)) / sum_b r_ba(d-e_v)(1 - p_bv(d-e_b-e_v)).
template <class PSrc, class RSrc>
typename PSrc::Scalar apply_P(const PSrc& psrc, const RSrc& rsrc, const typename PSrc::Handle& h,
                              Vertex a, Vertex v) {
  using Scalar = typename PSrc::Scalar;
  const GraphClass& cls = psrc.graph_class();
  if (!cls.allowable(a, v)) throw PreconditionError("apply_P: (a,v) must be allowable");
  int dv = psrc.degree(h, v);
  if (psrc.degree(h, a) == 0 || dv == 0 || psrc.null(h)) return Scalar(0);
  auto h2 = psrc.minus(h, v);
  auto h1 = psrc.minus(h2, a);
  if (psrc.null(h1)) return Scalar(0);
  Scalar qa = Scalar(1) - detail::lookup_p(psrc, a, v, h1);
  Scalar sum(0);
  for (Vertex b = 1; b <= cls.vertex_count(); ++b) {
    if (!cls.allowable(b, v) || psrc.degree(h2, b) == 0) continue;
    Scalar r = b == a ? Scalar(1) : Scalar(rsrc.r(b, a, h2));
    if (ScalarTraits<Scalar>::is_zero(r)) continue;
    sum += r * (Scalar(1) - detail::lookup_p(psrc, b, v, psrc.minus(h2, b)));
  }
  if (ScalarTraits<Scalar>::near_zero(sum))
    throw SingularityError(detail::key_text("P", {a, v}, psrc.describe(h)) +
                           ": denominator sum vanishes");
  Scalar out = Scalar(dv) * qa / sum;
  return out;
}

// Y(p,y)_avb(d) = p_av(d)(p_bv(d') - y_avb(d')) / (1 - p_av(d')), d' = d - e_a - e_v.
template <class PSrc, class YSrc>
typename PSrc::Scalar apply_Y(const PSrc& psrc, const YSrc& ysrc, const typename PSrc::Handle& h,
                              Vertex a, Vertex v, Vertex b) {
  using Scalar = typename PSrc::Scalar;
  const GraphClass& cls = psrc.graph_class();
  if (a == b || !cls.allowable(a, v) || !cls.allowable(b, v))
    throw PreconditionError("apply_Y: (a,v,b) must be an allowable 2-path");
  Scalar pav = detail::lookup_p(psrc, a, v, h);
  if (ScalarTraits<Scalar>::is_zero(pav)) return Scalar(0);
  auto h1 = psrc.minus(psrc.minus(h, a), v);
  if (psrc.null(h1)) return Scalar(0);
  Scalar q = Scalar(1) - detail::lookup_p(psrc, a, v, h1);
  if (ScalarTraits<Scalar>::near_zero(q))
    throw SingularityError(detail::key_text("Y", {a, v, b}, psrc.describe(h)) +
                           ": 1 - p_av(d-e_a-e_v) vanishes");
  Scalar out = pav * (detail::lookup_p(psrc, b, v, h1) - detail::lookup_y(ysrc, a, v, b, h1)) / q;
  return out;
}

// Tables keyed by sequence, populated explicitly.
template <class ScalarT>
class ProbTables {
 public:
  using Scalar = ScalarT;
  using Handle = DegreeSequence;

  explicit ProbTables(GraphClass cls) : cls_(cls) {}

  const GraphClass& graph_class() const { return cls_; }
  int degree(const DegreeSequence& d, Vertex x) const { return d[x]; }
  DegreeSequence minus(const DegreeSequence& d, Vertex x) const { return perturb(d, {x}); }
  std::string describe(const DegreeSequence& d) const { return d.to_string(); }

  bool null(const DegreeSequence& d) const {
    auto it = entries_.find(d);
    return it != entries_.end() && it->second.null;
  }
  void mark_null(const DegreeSequence& d) { entries_[d].null = true; }

  Scalar p(Vertex a, Vertex v, const DegreeSequence& d) const { return get(d, key(a, v, 0), 0, "p", {a, v}); }
  Scalar y(Vertex a, Vertex v, Vertex b, const DegreeSequence& d) const {
    return get(d, key(a, v, b), 1, "y", {a, v, b});
  }
  Scalar r(Vertex a, Vertex b, const DegreeSequence& d) const {
    if (a == b) return Scalar(1);
    return get(d, key(a, b, 0), 2, "r", {a, b});
  }

  void set_p(Vertex a, Vertex v, const DegreeSequence& d, Scalar x) { entries_[d].maps[0][key(a, v, 0)] = x; }
  void set_y(Vertex a, Vertex v, Vertex b, const DegreeSequence& d, Scalar x) {
    entries_[d].maps[1][key(a, v, b)] = x;
  }
  void set_r(Vertex a, Vertex b, const DegreeSequence& d, Scalar x) { entries_[d].maps[2][key(a, b, 0)] = x; }

  bool has_p(Vertex a, Vertex v, const DegreeSequence& d) const { return has(d, key(a, v, 0), 0); }
  bool has_y(Vertex a, Vertex v, Vertex b, const DegreeSequence& d) const { return has(d, key(a, v, b), 1); }
  bool has_r(Vertex a, Vertex b, const DegreeSequence& d) const { return has(d, key(a, b, 0), 2); }

  std::vector<DegreeSequence> sequences() const {
    std::vector<DegreeSequence> out;
    for (const auto& [d, e] : entries_) out.push_back(d);
    return out;
  }

 private:
  struct Entry {
    bool null = false;
    std::unordered_map<std::uint32_t, Scalar> maps[3];
  };

  static std::uint32_t key(Vertex a, Vertex b, Vertex c) {
    return static_cast<std::uint32_t>(a) << 20 | static_cast<std::uint32_t>(b) << 10 |
           static_cast<std::uint32_t>(c);
  }

  bool has(const DegreeSequence& d, std::uint32_t k, int which) const {
    auto it = entries_.find(d);
    return it != entries_.end() && it->second.maps[which].count(k);
  }

  Scalar get(const DegreeSequence& d, std::uint32_t k, int which, const char* what,
             std::initializer_list<Vertex> vs) const {
    auto it = entries_.find(d);
    if (it != entries_.end()) {
      auto jt = it->second.maps[which].find(k);
      if (jt != it->second.maps[which].end()) return jt->second;
    }
    throw DomainError("missing table entry " + detail::key_text(what, vs, d.to_string()));
  }

  GraphClass cls_;
  std::unordered_map<DegreeSequence, Entry, DegreeSequenceHash> entries_;
};

// p, y, r identically constant.
template <class ScalarT>
class ConstantTables {
 public:
  using Scalar = ScalarT;
  using Handle = DegreeSequence;

  ConstantTables(GraphClass cls, Scalar p, Scalar y, Scalar r = Scalar(1))
      : cls_(cls), p_(p), y_(y), r_(r) {}

  const GraphClass& graph_class() const { return cls_; }
  int degree(const DegreeSequence& d, Vertex x) const { return d[x]; }
  DegreeSequence minus(const DegreeSequence& d, Vertex x) const { return perturb(d, {x}); }
  std::string describe(const DegreeSequence& d) const { return d.to_string(); }
  bool null(const DegreeSequence&) const { return false; }
  Scalar p(Vertex, Vertex, const DegreeSequence&) const { return p_; }
  Scalar y(Vertex, Vertex, Vertex, const DegreeSequence&) const { return y_; }
  Scalar r(Vertex a, Vertex b, const DegreeSequence&) const { return a == b ? Scalar(1) : r_; }

 private:
  GraphClass cls_;
  Scalar p_, y_, r_;
};

struct PiCondition {
  bool pass = true;
  std::string witness;
};

struct PiReport {
  PiCondition a, b, c;
  bool pass() const { return a.pass && b.pass && c.pass; }
};

// Conditions (a) 0 <= p <= mu, (b) sum_v y_avb <= mu d_a, (c) 0 <= y_avb <= mu p_bv
// over the balanced members of `domain`.
template <class Src>
PiReport check_Pi_membership(const Src& src, double mu, const std::vector<DegreeSequence>& domain) {
  using Tr = ScalarTraits<typename Src::Scalar>;
  PiReport rep;
  const GraphClass& cls = src.graph_class();
  const int N = cls.vertex_count();
  auto fail = [](PiCondition& c, const std::string& w) {
    if (c.pass) {
      c.pass = false;
      c.witness = w;
    }
  };
  for (const DegreeSequence& d : domain) {
    if (balance_state(d) != Balance::balanced) continue;
    for (Vertex a = 1; a <= N; ++a)
      for (Vertex v = 1; v <= N; ++v) {
        if (!cls.allowable(a, v)) continue;
        double p = Tr::to_double(detail::lookup_p(src, a, v, d));
        if (p < 0 || p > mu)
          fail(rep.a, detail::key_text("p", {a, v}, d.to_string()) + " = " + std::to_string(p));
      }
    for (Vertex a = 1; a <= N; ++a)
      for (Vertex b = 1; b <= N; ++b) {
        if (a == b || !cls.same_part(a, b)) continue;
        double sum = 0;
        for (Vertex v = 1; v <= N; ++v) {
          if (!cls.allowable(a, v) || !cls.allowable(b, v)) continue;
          double y = Tr::to_double(detail::lookup_y(src, a, v, b, d));
          double pb = Tr::to_double(detail::lookup_p(src, b, v, d));
          sum += y;
          if (y < 0 || y > mu * pb)
            fail(rep.c, detail::key_text("y", {a, v, b}, d.to_string()) + " = " + std::to_string(y) +
                            " vs mu*p_bv = " + std::to_string(mu * pb));
        }
        if (sum > mu * d[a])
          fail(rep.b, "sum_v y(" + std::to_string(a) + ",v," + std::to_string(b) + ") at " +
                          d.to_string() + " = " + std::to_string(sum));
      }
  }
  return rep;
}

}  // namespace degseq
