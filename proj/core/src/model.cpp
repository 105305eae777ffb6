#include "degseq/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "degseq/errors.hpp"

namespace degseq {

const char* to_string(GraphKind kind) {
  return kind == GraphKind::digraph ? "digraph" : "bipartite";
}

const char* to_string(Balance b) {
  switch (b) {
    case Balance::balanced: return "balanced";
    case Balance::S_heavy: return "S_heavy";
    case Balance::T_heavy: return "T_heavy";
    case Balance::other: return "other";
  }
  return "other";
}

GraphClass GraphClass::bipartite(int ell, int n) {
  if (ell < 1 || n < 1) throw PreconditionError("bipartite class needs ell >= 1 and n >= 1");
  return GraphClass(GraphKind::bipartite, ell, n);
}

GraphClass GraphClass::digraph(int n) {
  if (n < 2) throw PreconditionError("digraph class needs n >= 2");
  return GraphClass(GraphKind::digraph, n, n);
}

long long GraphClass::pair_count() const {
  return static_cast<long long>(ell_) * n_ - static_cast<long long>(delta_di()) * n_;
}

bool GraphClass::same_part(Vertex x, Vertex y) const {
  return (in_S(x) && in_S(y)) || (in_T(x) && in_T(y));
}

Vertex GraphClass::mate(Vertex x) const {
  if (in_S(x)) return x + ell_;
  if (in_T(x)) return x - ell_;
  throw PreconditionError("mate: vertex " + std::to_string(x) + " out of range");
}

bool GraphClass::allowable(Vertex x, Vertex y) const {
  if (in_T(x) && in_S(y)) std::swap(x, y);
  if (!in_S(x) || !in_T(y)) return false;
  return !is_digraph() || y != x + ell_;
}

std::vector<Vertex> GraphClass::neighbours(Vertex x) const {
  std::vector<Vertex> out;
  if (in_S(x)) {
    for (Vertex v = ell_ + 1; v <= ell_ + n_; ++v)
      if (allowable(x, v)) out.push_back(v);
  } else if (in_T(x)) {
    for (Vertex a = 1; a <= ell_; ++a)
      if (allowable(a, x)) out.push_back(a);
  }
  return out;
}

int GraphClass::degree_cap(Vertex x) const {
  return in_S(x) ? n_ - delta_di() : ell_ - delta_di();
}

GraphClass GraphClass::swapped() const { return GraphClass(kind_, n_, ell_); }

Vertex GraphClass::swap_vertex(Vertex x) const {
  if (in_S(x)) return x + n_;
  if (in_T(x)) return x - ell_;
  throw PreconditionError("swap_vertex: vertex " + std::to_string(x) + " out of range");
}

DegreeSequence::DegreeSequence(GraphClass cls, std::vector<int> s, std::vector<int> t)
    : cls_(cls) {
  if (static_cast<int>(s.size()) != cls.ell())
    throw PreconditionError("s has length " + std::to_string(s.size()) + ", expected " +
                            std::to_string(cls.ell()));
  if (static_cast<int>(t.size()) != cls.n())
    throw PreconditionError("t has length " + std::to_string(t.size()) + ", expected " +
                            std::to_string(cls.n()));
  d_ = std::move(s);
  d_.insert(d_.end(), t.begin(), t.end());
  for (std::size_t i = 0; i < d_.size(); ++i)
    if (d_[i] < 0)
      throw PreconditionError("negative degree at vertex " + std::to_string(i + 1));
}

DegreeSequence DegreeSequence::from_degrees(GraphClass cls, std::vector<int> d) {
  if (static_cast<int>(d.size()) != cls.vertex_count())
    throw PreconditionError("degree vector has wrong length");
  std::vector<int> t(d.begin() + cls.ell(), d.end());
  d.resize(static_cast<std::size_t>(cls.ell()));
  return DegreeSequence(cls, std::move(d), std::move(t));
}

long long DegreeSequence::sum_s() const {
  auto sp = s();
  return std::accumulate(sp.begin(), sp.end(), 0LL);
}

long long DegreeSequence::sum_t() const {
  auto tp = t();
  return std::accumulate(tp.begin(), tp.end(), 0LL);
}

bool DegreeSequence::entrywise_feasible() const {
  for (Vertex x = 1; x <= cls_.vertex_count(); ++x)
    if (degree(x) > cls_.degree_cap(x)) return false;
  return true;
}

std::string DegreeSequence::to_string() const {
  std::ostringstream os;
  os << degseq::to_string(cls_.kind());
  if (cls_.is_digraph())
    os << " n=" << cls_.n();
  else
    os << " " << cls_.ell() << "x" << cls_.n();
  auto list = [&](std::span<const int> v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << " s=";
  list(s());
  os << " t=";
  list(t());
  return os.str();
}

std::size_t hash_degrees(const std::vector<int>& d) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ d.size();
  for (int x : d) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::size_t DegreeSequenceHash::operator()(const DegreeSequence& d) const {
  return hash_degrees(d.degrees()) ^ (static_cast<std::size_t>(d.graph_class().ell()) << 40) ^
         (static_cast<std::size_t>(d.graph_class().is_digraph()) << 62);
}

Balance balance_state(const DegreeSequence& d) {
  long long diff = d.sum_s() - d.sum_t();
  if (diff == 0) return Balance::balanced;
  if (diff == 1) return Balance::S_heavy;
  if (diff == -1) return Balance::T_heavy;
  return Balance::other;
}

DegreeSequence perturb(const DegreeSequence& d, std::span<const Vertex> decrements) {
  std::vector<int> out = d.degrees();
  for (Vertex x : decrements) {
    if (!d.graph_class().valid(x))
      throw PreconditionError("perturb: vertex " + std::to_string(x) + " out of range");
    int& e = out[static_cast<std::size_t>(x - 1)];
    if (e == 0) throw UnderflowError(x, "perturb: degree of vertex " + std::to_string(x) +
                                            " would become negative");
    --e;
  }
  return DegreeSequence::from_degrees(d.graph_class(), std::move(out));
}

DegreeSequence perturb(const DegreeSequence& d, std::initializer_list<Vertex> decrements) {
  return perturb(d, std::span<const Vertex>(decrements.begin(), decrements.size()));
}

std::optional<DegreeSequence> try_perturb(const DegreeSequence& d,
                                          std::initializer_list<Vertex> decrements) {
  std::vector<int> out = d.degrees();
  for (Vertex x : decrements) {
    int& e = out[static_cast<std::size_t>(x - 1)];
    if (e == 0) return std::nullopt;
    --e;
  }
  return DegreeSequence::from_degrees(d.graph_class(), std::move(out));
}

DegreeSequence swap_sides(const DegreeSequence& d) {
  auto s = d.s();
  auto t = d.t();
  return DegreeSequence(d.graph_class().swapped(), std::vector<int>(t.begin(), t.end()),
                        std::vector<int>(s.begin(), s.end()));
}

namespace {

Rational mean_of(std::span<const int> v) {
  Rational q(std::accumulate(v.begin(), v.end(), 0L), static_cast<long>(v.size()));
  q.canonicalize();
  return q;
}

Rational variance_of(std::span<const int> v, const Rational& mean) {
  Rational acc = 0;
  for (int x : v) {
    Rational dx = Rational(x) - mean;
    acc += dx * dx;
  }
  return acc / static_cast<long>(v.size());
}

}  // namespace

SeqStats stats(const DegreeSequence& d) {
  const GraphClass& cls = d.graph_class();
  SeqStats st;
  st.M1s = d.sum_s();
  st.M1t = d.sum_t();
  for (int x : d.t()) st.M2t += static_cast<long long>(x) * (x - 1);
  st.s_bar = mean_of(d.s());
  st.t_bar = mean_of(d.t());
  st.mu = Rational(static_cast<long>(st.M1s + st.M1t)) / (2 * Rational(static_cast<long>(cls.pair_count())));
  st.sigma2_s = variance_of(d.s(), st.s_bar);
  st.sigma2_t = variance_of(d.t(), st.t_bar);
  if (cls.is_digraph()) {
    Rational acc = 0;
    for (Vertex a = 1; a <= cls.ell(); ++a)
      acc += (Rational(d[a]) - st.s_bar) * (Rational(d[cls.mate(a)]) - st.t_bar);
    st.sigma_st = acc / cls.n();
  }
  st.delta_S = *std::max_element(d.s().begin(), d.s().end());
  st.delta_T = *std::max_element(d.t().begin(), d.t().end());
  if (st.s_bar != 0)
    for (int x : d.s()) st.eps_a.push_back((Rational(x) - st.s_bar) / st.s_bar);
  if (st.t_bar != 0)
    for (int x : d.t()) st.eps_v.push_back((Rational(x) - st.t_bar) / st.t_bar);
  return st;
}

FloatStats float_stats(const DegreeSequence& d) {
  const GraphClass& cls = d.graph_class();
  FloatStats f;
  f.ell = cls.ell();
  f.n = cls.n();
  f.delta_di = cls.delta_di();
  f.pair_count = static_cast<double>(cls.pair_count());
  for (int x : d.s()) f.M1s += x;
  for (int x : d.t()) {
    f.M1t += x;
    f.M2t += static_cast<double>(x) * (x - 1);
  }
  f.s_bar = f.M1s / f.ell;
  f.t_bar = f.M1t / f.n;
  f.mu = (f.M1s + f.M1t) / (2.0 * f.pair_count);
  // Two-pass form keeps cancellation small.
  double vs = 0, vt = 0;
  for (int x : d.s()) vs += (x - f.s_bar) * (x - f.s_bar);
  for (int x : d.t()) vt += (x - f.t_bar) * (x - f.t_bar);
  f.sigma2_s = vs / f.ell;
  f.sigma2_t = vt / f.n;
  if (cls.is_digraph()) {
    double acc = 0;
    for (Vertex a = 1; a <= cls.ell(); ++a)
      acc += (d[a] - f.s_bar) * (d[cls.mate(a)] - f.t_bar);
    f.sigma_st = acc / f.n;
  }
  f.delta_S = *std::max_element(d.s().begin(), d.s().end());
  f.delta_T = *std::max_element(d.t().begin(), d.t().end());
  return f;
}

double to_double(const Rational& q) { return q.get_d(); }

double to_double(const BigCount& z) { return z.get_d(); }

double log_of(const BigCount& z) {
  if (z <= 0) throw PreconditionError("log_of: non-positive argument");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace degseq
