#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace degseq {

// Vertices are 1-based: S = [1..ell], T = [ell+1..ell+n].
using Vertex = int;
using BigCount = mpz_class;
using Rational = mpq_class;
using ExactProb = mpq_class;

enum class GraphKind { bipartite, digraph };

const char* to_string(GraphKind kind);

class GraphClass {
 public:
  static GraphClass bipartite(int ell, int n);
  static GraphClass digraph(int n);

  GraphKind kind() const { return kind_; }
  bool is_digraph() const { return kind_ == GraphKind::digraph; }
  int delta_di() const { return is_digraph() ? 1 : 0; }
  int ell() const { return ell_; }
  int n() const { return n_; }
  int vertex_count() const { return ell_ + n_; }
  // |A| = ell*n - delta*n
  long long pair_count() const;

  bool in_S(Vertex x) const { return x >= 1 && x <= ell_; }
  bool in_T(Vertex x) const { return x > ell_ && x <= ell_ + n_; }
  bool valid(Vertex x) const { return x >= 1 && x <= ell_ + n_; }
  bool same_part(Vertex x, Vertex y) const;

  Vertex mate(Vertex x) const;
  // Symmetric: accepts (S,T) or (T,S) order.
  bool allowable(Vertex x, Vertex y) const;
  // A(x): the vertices y with {x,y} allowable, ascending.
  std::vector<Vertex> neighbours(Vertex x) const;
  // Largest degree x can have: n - delta for S, ell - delta for T.
  int degree_cap(Vertex x) const;

  GraphClass swapped() const;
  // Image of x under the S<->T relabelling used by swap_sides().
  Vertex swap_vertex(Vertex x) const;

  bool operator==(const GraphClass&) const = default;

 private:
  GraphClass(GraphKind kind, int ell, int n) : kind_(kind), ell_(ell), n_(n) {}

  GraphKind kind_;
  int ell_;
  int n_;
};

class DegreeSequence {
 public:
  DegreeSequence(GraphClass cls, std::vector<int> s, std::vector<int> t);
  static DegreeSequence from_degrees(GraphClass cls, std::vector<int> d);

  const GraphClass& graph_class() const { return cls_; }
  std::span<const int> s() const { return {d_.data(), static_cast<std::size_t>(cls_.ell())}; }
  std::span<const int> t() const {
    return {d_.data() + cls_.ell(), static_cast<std::size_t>(cls_.n())};
  }
  // Full vector d = (s, t); d[x-1] is the degree of vertex x.
  const std::vector<int>& degrees() const { return d_; }
  int degree(Vertex x) const { return d_[static_cast<std::size_t>(x - 1)]; }
  int operator[](Vertex x) const { return degree(x); }

  long long sum_s() const;
  long long sum_t() const;
  // s_a <= n - delta and t_v <= ell - delta everywhere.
  bool entrywise_feasible() const;

  std::string to_string() const;

  bool operator==(const DegreeSequence&) const = default;

 private:
  GraphClass cls_;
  std::vector<int> d_;
};

struct DegreeSequenceHash {
  std::size_t operator()(const DegreeSequence& d) const;
};
std::size_t hash_degrees(const std::vector<int>& d);

enum class Balance { balanced, S_heavy, T_heavy, other };
const char* to_string(Balance b);

Balance balance_state(const DegreeSequence& d);

// d - sum of e_i over the listed vertices; throws UnderflowError naming the vertex.
DegreeSequence perturb(const DegreeSequence& d, std::span<const Vertex> decrements);
DegreeSequence perturb(const DegreeSequence& d, std::initializer_list<Vertex> decrements);
// Same, but returns nullopt instead of throwing on underflow.
std::optional<DegreeSequence> try_perturb(const DegreeSequence& d,
                                          std::initializer_list<Vertex> decrements);

// (s,t,ell,n) -> (t,s,n,ell); an involution.
DegreeSequence swap_sides(const DegreeSequence& d);

struct SeqStats {
  long long M1s = 0;
  long long M1t = 0;
  long long M2t = 0;
  Rational s_bar, t_bar, mu;
  Rational sigma2_s, sigma2_t;
  std::optional<Rational> sigma_st;
  int delta_S = 0;
  int delta_T = 0;
  // Relative deviations, indexed by position within the part. Empty when the
  // part mean is zero.
  std::vector<Rational> eps_a;
  std::vector<Rational> eps_v;
};

SeqStats stats(const DegreeSequence& d);

// Double-precision view of the same statistics for formula evaluation.
struct FloatStats {
  int ell = 0;
  int n = 0;
  int delta_di = 0;
  double pair_count = 0;
  double M1s = 0, M1t = 0, M2t = 0;
  double s_bar = 0, t_bar = 0, mu = 0;
  double sigma2_s = 0, sigma2_t = 0, sigma_st = 0;
  int delta_S = 0, delta_T = 0;
};

FloatStats float_stats(const DegreeSequence& d);

double to_double(const Rational& q);
double to_double(const BigCount& z);
// Natural log of a positive integer without overflow.
double log_of(const BigCount& z);

}  // namespace degseq
