#include "degseq/event_expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <vector>

#include "degseq/errors.hpp"

namespace degseq {

enum class Op { num, var, entry_s, entry_t, neg, not_, add, sub, mul, div, lt, le, gt, ge, eq, ne, and_, or_ };

struct EventExpr::Node {
  Op op = Op::num;
  double value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const EventExpr::Node>;

const char* const kVariables[] = {"sigma2_s", "sigma2_t", "sigma_st", "max_s", "max_t", "mean_s",
                                  "mean_t",   "mu",       "m",        "n",     "ell"};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = parse_or();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw PreconditionError("event expression, column " + std::to_string(pos_ + 1) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const char* tok) {
    skip();
    std::size_t len = std::char_traits<char>::length(tok);
    if (s_.compare(pos_, len, tok) == 0) {
      pos_ += len;
      return true;
    }
    return false;
  }
  static NodePtr bin(Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<EventExpr::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr parse_or() {
    NodePtr e = parse_and();
    while (eat("||")) e = bin(Op::or_, e, parse_and());
    return e;
  }
  NodePtr parse_and() {
    NodePtr e = parse_cmp();
    while (eat("&&")) e = bin(Op::and_, e, parse_cmp());
    return e;
  }
  NodePtr parse_cmp() {
    NodePtr e = parse_sum();
    for (;;) {
      if (eat("<="))
        e = bin(Op::le, e, parse_sum());
      else if (eat(">="))
        e = bin(Op::ge, e, parse_sum());
      else if (eat("=="))
        e = bin(Op::eq, e, parse_sum());
      else if (eat("!="))
        e = bin(Op::ne, e, parse_sum());
      else if (eat("<"))
        e = bin(Op::lt, e, parse_sum());
      else if (eat(">"))
        e = bin(Op::gt, e, parse_sum());
      else
        return e;
    }
  }
  NodePtr parse_sum() {
    NodePtr e = parse_prod();
    for (;;) {
      if (eat("+"))
        e = bin(Op::add, e, parse_prod());
      else if (eat("-"))
        e = bin(Op::sub, e, parse_prod());
      else
        return e;
    }
  }
  NodePtr parse_prod() {
    NodePtr e = parse_unary();
    for (;;) {
      if (eat("*"))
        e = bin(Op::mul, e, parse_unary());
      else if (eat("/"))
        e = bin(Op::div, e, parse_unary());
      else
        return e;
    }
  }
  NodePtr parse_unary() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '!' && s_.compare(pos_, 2, "!=") != 0) {
      ++pos_;
      return bin(Op::not_, parse_unary(), nullptr);
    }
    if (eat("-")) return bin(Op::neg, parse_unary(), nullptr);
    return parse_atom();
  }
  NodePtr parse_atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_or();
      if (!eat(")")) fail("expected ')'");
      return e;
    }
    auto n = std::make_shared<EventExpr::Node>();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      try {
        n->value = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string word = s_.substr(start, pos_ - start);
    if (word == "true" || word == "false") {
      n->value = word == "true" ? 1.0 : 0.0;
      return n;
    }
    if (word == "s" || word == "t") {
      if (!eat("[")) fail("expected '[' after " + word);
      skip();
      std::size_t istart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (istart == pos_) fail("expected an index");
      n->op = word == "s" ? Op::entry_s : Op::entry_t;
      n->value = std::stod(s_.substr(istart, pos_ - istart));
      if (!eat("]")) fail("expected ']'");
      return n;
    }
    if (std::find(std::begin(kVariables), std::end(kVariables), word) == std::end(kVariables))
      fail("unknown name '" + word + "'");
    n->op = Op::var;
    n->name = word;
    return n;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

struct Context {
  const DegreeSequence& d;
  mutable std::optional<FloatStats> f;
  const FloatStats& stats() const {
    if (!f) f = float_stats(d);
    return *f;
  }
};

double eval(const EventExpr::Node& n, const Context& cx) {
  auto L = [&] { return eval(*n.lhs, cx); };
  auto R = [&] { return eval(*n.rhs, cx); };
  switch (n.op) {
    case Op::num:
      return n.value;
    case Op::entry_s:
    case Op::entry_t: {
      auto part = n.op == Op::entry_s ? cx.d.s() : cx.d.t();
      auto i = static_cast<std::size_t>(n.value);
      if (i >= part.size())
        throw PreconditionError(std::string("event expression: index ") + std::to_string(i) + " out of range for " +
                                (n.op == Op::entry_s ? "s" : "t"));
      return part[i];
    }
    case Op::var: {
      const std::string& v = n.name;
      if (v == "max_s") return cx.d.s().empty() ? 0 : *std::max_element(cx.d.s().begin(), cx.d.s().end());
      if (v == "max_t") return cx.d.t().empty() ? 0 : *std::max_element(cx.d.t().begin(), cx.d.t().end());
      if (v == "m") return static_cast<double>(cx.d.sum_s());
      if (v == "n") return cx.d.graph_class().n();
      if (v == "ell") return cx.d.graph_class().ell();
      const FloatStats& f = cx.stats();
      if (v == "sigma2_s") return f.sigma2_s;
      if (v == "sigma2_t") return f.sigma2_t;
      if (v == "sigma_st") return f.sigma_st;
      if (v == "mean_s") return f.s_bar;
      if (v == "mean_t") return f.t_bar;
      return f.mu;
    }
    case Op::neg:
      return -L();
    case Op::not_:
      return L() == 0.0 ? 1.0 : 0.0;
    case Op::add:
      return L() + R();
    case Op::sub:
      return L() - R();
    case Op::mul:
      return L() * R();
    case Op::div:
      return L() / R();
    case Op::lt:
      return L() < R();
    case Op::le:
      return L() <= R();
    case Op::gt:
      return L() > R();
    case Op::ge:
      return L() >= R();
    case Op::eq:
      return L() == R();
    case Op::ne:
      return L() != R();
    case Op::and_:
      return L() != 0.0 && R() != 0.0;
    case Op::or_:
      return L() != 0.0 || R() != 0.0;
  }
  return 0.0;
}

}  // namespace

EventExpr::EventExpr(const std::string& text) : text_(text), root_(Parser(text_).parse()) {}
EventExpr::EventExpr(const EventExpr&) = default;
EventExpr& EventExpr::operator=(const EventExpr&) = default;
EventExpr::EventExpr(EventExpr&&) noexcept = default;
EventExpr& EventExpr::operator=(EventExpr&&) noexcept = default;
EventExpr::~EventExpr() = default;

double EventExpr::evaluate(const DegreeSequence& d) const { return eval(*root_, Context{d, std::nullopt}); }

}  // namespace degseq
