#pragma once

#include <memory>
#include <string>

#include "degseq/model.hpp"

namespace degseq {

// Small expression language over one degree sequence.
//   s[i], t[j]          0-based entries of the two parts
//   sigma2_s sigma2_t sigma_st max_s max_t mean_s mean_t mu m n ell
//   numbers, true, false, + - * / unary -, < <= > >= == !=, && || !
// Comparisons and logic yield 1 or 0; an event holds when its value is nonzero.
class EventExpr {
 public:
  explicit EventExpr(const std::string& text);
  EventExpr(const EventExpr&);
  EventExpr& operator=(const EventExpr&);
  EventExpr(EventExpr&&) noexcept;
  EventExpr& operator=(EventExpr&&) noexcept;
  ~EventExpr();

  double evaluate(const DegreeSequence& d) const;
  bool holds(const DegreeSequence& d) const { return evaluate(d) != 0.0; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace degseq
