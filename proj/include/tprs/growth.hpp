// Copyright 2026 The tprs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Growth classes T(n), symbolic bound expressions and the negligibility,
// closure and repetition rules built on them.
//
// Asymptotic decisions use monomial signatures: a positive function is
// summarized by its leading term coef * 2^(a n) * n^b * (log n)^c *
// (log log n)^d, and signatures (a, b, c, d) are compared lexicographically.
// Anything the signature algebra cannot represent is reported as undecided
// together with a numeric witness on a fixed grid.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tprs/errors.hpp"

namespace tprs {

using Signature = std::array<double, 4>;  // (exp, n, log, loglog) powers

namespace detail {
inline constexpr double kSigTol = 1e-12;

/// -1, 0 or +1 for the lexicographic sign of a signature.
inline int signature_sign(const Signature& s) {
  for (double v : s) {
    if (v > kSigTol) return 1;
    if (v < -kSigTol) return -1;
  }
  return 0;
}

/// Index of the first nonzero component, or 4 for the zero signature.
inline int leading_index(const Signature& s) {
  for (int i = 0; i < 4; ++i)
    if (std::abs(s[static_cast<std::size_t>(i)]) > kSigTol) return i;
  return 4;
}

inline Signature sig_add(const Signature& a, const Signature& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Signature sig_sub(const Signature& a, const Signature& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Signature sig_scale(const Signature& a, double k) { return {a[0] * k, a[1] * k, a[2] * k, a[3] * k}; }

inline bool sig_less(const Signature& a, const Signature& b) { return signature_sign(sig_sub(a, b)) < 0; }
inline bool sig_equal(const Signature& a, const Signature& b) { return signature_sign(sig_sub(a, b)) == 0; }

/// True if r(n) is O(x(n)^k) for some constant k.
inline bool poly_dominated(const Signature& r, const Signature& x) {
  if (signature_sign(r) <= 0) return true;
  return leading_index(r) >= leading_index(x);
}

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}
}  // namespace detail

enum class GrowthForm { Const, Log, LogLog, PolyLog, Linear, NLogN, Poly, PolyOf, Exp };

/// A runtime class T(n). Family forms (polylog, poly, poly-of) stand for all
/// polynomials in their base function; `exponent` picks the canonical member
/// used for numeric evaluation.
class GrowthClass {
 public:
  static GrowthClass constant() { return GrowthClass(GrowthForm::Const); }
  static GrowthClass log() { return GrowthClass(GrowthForm::Log); }
  static GrowthClass loglog() { return GrowthClass(GrowthForm::LogLog); }
  static GrowthClass linear() { return GrowthClass(GrowthForm::Linear); }
  static GrowthClass nlogn() { return GrowthClass(GrowthForm::NLogN); }
  static GrowthClass exp() { return GrowthClass(GrowthForm::Exp); }
  static GrowthClass polylog(double c = 2.0) { return family(GrowthForm::PolyLog, c, nullptr); }
  static GrowthClass poly(double c = 2.0) { return family(GrowthForm::Poly, c, nullptr); }
  static GrowthClass poly_of(const GrowthClass& base, double c = 2.0) {
    require(!base.is_family() && base.form() != GrowthForm::Const && base.form() != GrowthForm::Exp,
            ErrorKind::UnrecognizedForm, "poly-of needs a plain growing base, got " + base.name());
    return family(GrowthForm::PolyOf, c, std::make_shared<const GrowthClass>(base));
  }

  /// Parses "const", "log", "loglog", "polylog[:c]", "linear", "nlogn" or
  /// "linearithmic", "poly[:c]", "polyf:<base>" and "exp".
  static GrowthClass parse(const std::string& text) {
    std::string s = detail::trim(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    std::string head = s;
    std::string arg;
    if (const auto colon = s.find(':'); colon != std::string::npos) {
      head = s.substr(0, colon);
      arg = s.substr(colon + 1);
    }
    const auto exponent = [&](double fallback) {
      if (arg.empty()) return fallback;
      char* end = nullptr;
      const double c = std::strtod(arg.c_str(), &end);
      require(end != arg.c_str() && *end == '\0' && c > 0, ErrorKind::UnrecognizedForm,
              "bad exponent in growth class '" + text + "'");
      return c;
    };
    if (head == "polyf") {
      require(!arg.empty(), ErrorKind::UnrecognizedForm, "polyf needs a base, e.g. polyf:log");
      return poly_of(parse(arg));
    }
    if (head == "polylog") return polylog(exponent(2.0));
    if (head == "poly") return poly(exponent(2.0));
    require(arg.empty(), ErrorKind::UnrecognizedForm, "unexpected argument in growth class '" + text + "'");
    if (head == "const" || head == "constant" || head == "1") return constant();
    if (head == "log") return log();
    if (head == "loglog") return loglog();
    if (head == "linear" || head == "n") return linear();
    if (head == "nlogn" || head == "linearithmic") return nlogn();
    if (head == "exp") return exp();
    fail(ErrorKind::UnrecognizedForm, "unknown growth class '" + text + "'");
  }

  GrowthForm form() const { return form_; }
  double exponent() const { return exponent_; }
  bool is_family() const {
    return form_ == GrowthForm::PolyLog || form_ == GrowthForm::Poly || form_ == GrowthForm::PolyOf;
  }

  /// The base function f: the class itself for plain forms, the inner
  /// function for polynomial families.
  GrowthClass base_function() const {
    switch (form_) {
      case GrowthForm::PolyLog: return log();
      case GrowthForm::Poly: return linear();
      case GrowthForm::PolyOf: return *base_;
      default: return *this;
    }
  }

  std::string name() const {
    switch (form_) {
      case GrowthForm::Const: return "const";
      case GrowthForm::Log: return "log";
      case GrowthForm::LogLog: return "loglog";
      case GrowthForm::Linear: return "linear";
      case GrowthForm::NLogN: return "nlogn";
      case GrowthForm::Exp: return "exp";
      case GrowthForm::PolyLog: return exponent_ == 2.0 ? "polylog" : "polylog:" + detail::format_number(exponent_);
      case GrowthForm::Poly: return exponent_ == 2.0 ? "poly" : "poly:" + detail::format_number(exponent_);
      case GrowthForm::PolyOf: return "polyf:" + base_->name();
    }
    return "?";
  }

  /// Signature of the canonical representative.
  Signature signature() const {
    switch (form_) {
      case GrowthForm::Const: return {0, 0, 0, 0};
      case GrowthForm::Log: return {0, 0, 1, 0};
      case GrowthForm::LogLog: return {0, 0, 0, 1};
      case GrowthForm::Linear: return {0, 1, 0, 0};
      case GrowthForm::NLogN: return {0, 1, 1, 0};
      case GrowthForm::Exp: return {1, 0, 0, 0};
      case GrowthForm::PolyLog: return {0, 0, exponent_, 0};
      case GrowthForm::Poly: return {0, exponent_, 0, 0};
      case GrowthForm::PolyOf: return detail::sig_scale(base_->signature(), exponent_);
    }
    return {0, 0, 0, 0};
  }

  /// log2 of the canonical representative at n >= 2. log log n is clamped
  /// below at 1 so every class is at least 1 on the whole range.
  double log2_value(double n) const {
    require(n >= 2, ErrorKind::InvalidArgument, "growth classes are evaluated at n >= 2");
    const double lg = std::log2(n);
    switch (form_) {
      case GrowthForm::Const: return 0.0;
      case GrowthForm::Log: return std::log2(lg);
      case GrowthForm::LogLog: return std::log2(std::max(1.0, std::log2(lg)));
      case GrowthForm::Linear: return lg;
      case GrowthForm::NLogN: return lg + std::log2(lg);
      case GrowthForm::Exp: return n;
      case GrowthForm::PolyLog: return exponent_ * std::log2(lg);
      case GrowthForm::Poly: return exponent_ * lg;
      case GrowthForm::PolyOf: return exponent_ * base_->log2_value(n);
    }
    return 0.0;
  }

  double value(double n) const { return std::exp2(log2_value(n)); }

  friend bool operator==(const GrowthClass& a, const GrowthClass& b) { return a.name() == b.name(); }

 private:
  explicit GrowthClass(GrowthForm form) : form_(form) {}
  static GrowthClass family(GrowthForm form, double c, std::shared_ptr<const GrowthClass> base) {
    require(c > 0, ErrorKind::InvalidArgument, "family exponent must be positive");
    GrowthClass g(form);
    g.exponent_ = c;
    g.base_ = std::move(base);
    return g;
  }

  GrowthForm form_;
  double exponent_ = 1.0;
  std::shared_ptr<const GrowthClass> base_;
};

// ---------------------------------------------------------------------------
// Signed log-domain numbers, so 2^(-n) at n = 2^20 does not underflow.

struct LogNumber {
  int sign = 0;          // -1, 0, +1
  double log2_abs = -std::numeric_limits<double>::infinity();

  static LogNumber from(double v) {
    if (v == 0.0) return {};
    return {v > 0 ? 1 : -1, std::log2(std::abs(v))};
  }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp2(log2_abs); }
};

namespace detail {
inline LogNumber log_add(LogNumber a, LogNumber b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.log2_abs < b.log2_abs) std::swap(a, b);
  const double r = std::exp2(b.log2_abs - a.log2_abs);  // <= 1
  if (a.sign == b.sign) return {a.sign, a.log2_abs + std::log2(1.0 + r)};
  if (r >= 1.0) return {};
  return {a.sign, a.log2_abs + std::log2(1.0 - r)};
}
inline LogNumber log_mul(LogNumber a, LogNumber b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.log2_abs + b.log2_abs};
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Bound expressions

enum class ExprOp { Const, N, Growth, Add, Mul, Div, Pow, Pow2, Log2, Neg };

/// One term coef * 2^(a n) n^b (log n)^c (log log n)^d of an asymptotic form.
struct Monomial {
  double coef = 0.0;
  Signature sig{0, 0, 0, 0};
};

/// Sum of monomials with distinct signatures.
using AsymptoticForm = std::vector<Monomial>;

class BoundExpr {
 public:
  static BoundExpr constant(double v) { return BoundExpr(make(ExprOp::Const, v)); }
  static BoundExpr n() { return BoundExpr(make(ExprOp::N)); }
  static BoundExpr growth(const GrowthClass& g) {
    auto node = make(ExprOp::Growth);
    node->growth = std::make_shared<const GrowthClass>(g);
    return BoundExpr(node);
  }
  static BoundExpr pow2(const BoundExpr& e) { return unary(ExprOp::Pow2, e); }
  static BoundExpr log2(const BoundExpr& e) { return unary(ExprOp::Log2, e); }

  friend BoundExpr operator+(const BoundExpr& a, const BoundExpr& b) { return binary(ExprOp::Add, a, b); }
  friend BoundExpr operator-(const BoundExpr& a, const BoundExpr& b) { return binary(ExprOp::Add, a, -b); }
  friend BoundExpr operator*(const BoundExpr& a, const BoundExpr& b) { return binary(ExprOp::Mul, a, b); }
  friend BoundExpr operator/(const BoundExpr& a, const BoundExpr& b) { return binary(ExprOp::Div, a, b); }
  BoundExpr operator-() const { return unary(ExprOp::Neg, *this); }
  static BoundExpr pow(const BoundExpr& a, const BoundExpr& b) { return binary(ExprOp::Pow, a, b); }

  /// Parses expressions such as "2^(-n)", "1/(n*log2(n))", "n - 2",
  /// "1/{linear}" (braces embed a growth class) or "log2(n*log2(n)) + 1".
  static BoundExpr parse(const std::string& text);

  ExprOp op() const { return node_->op; }

  /// Exact evaluation in the log domain.
  LogNumber eval_log(double n) const { return eval_log(*node_, n); }

  double eval(double n) const {
    const LogNumber v = eval_log(n);
    require(std::isfinite(v.log2_abs) || v.sign == 0, ErrorKind::NonEvaluable,
            "expression " + to_string() + " is not finite at n = " + detail::format_number(n));
    return v.to_double();
  }

  /// Asymptotic form, or nullopt when the expression leaves the monomial
  /// algebra (e.g. sqrt(n) inside an exponent, log of a logarithmic sum).
  std::optional<AsymptoticForm> asymptotic() const { return asymptotic(*node_); }

  std::string to_string() const { return to_string(*node_); }

 private:
  struct Node {
    ExprOp op;
    double value = 0.0;
    std::shared_ptr<const GrowthClass> growth;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  using NodePtr = std::shared_ptr<Node>;

  explicit BoundExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static NodePtr make(ExprOp op, double value = 0.0) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->value = value;
    return node;
  }
  static BoundExpr unary(ExprOp op, const BoundExpr& e) {
    auto node = make(op);
    node->lhs = e.node_;
    return BoundExpr(node);
  }
  static BoundExpr binary(ExprOp op, const BoundExpr& a, const BoundExpr& b) {
    auto node = make(op);
    node->lhs = a.node_;
    node->rhs = b.node_;
    return BoundExpr(node);
  }

  static LogNumber eval_log(const Node& e, double n) {
    using detail::log_add;
    using detail::log_mul;
    switch (e.op) {
      case ExprOp::Const: return LogNumber::from(e.value);
      case ExprOp::N: return LogNumber::from(n);
      case ExprOp::Growth: return {1, e.growth->log2_value(n)};
      case ExprOp::Add: return log_add(eval_log(*e.lhs, n), eval_log(*e.rhs, n));
      case ExprOp::Mul: return log_mul(eval_log(*e.lhs, n), eval_log(*e.rhs, n));
      case ExprOp::Div: {
        const LogNumber b = eval_log(*e.rhs, n);
        require(b.sign != 0, ErrorKind::NonEvaluable, "division by zero at n = " + detail::format_number(n));
        const LogNumber a = eval_log(*e.lhs, n);
        if (a.sign == 0) return {};
        return {a.sign * b.sign, a.log2_abs - b.log2_abs};
      }
      case ExprOp::Pow: {
        const LogNumber a = eval_log(*e.lhs, n);
        const double p = eval_log(*e.rhs, n).to_double();
        if (a.sign == 0) return p > 0 ? LogNumber{} : LogNumber{1, std::numeric_limits<double>::infinity()};
        require(a.sign > 0 || std::floor(p) == p, ErrorKind::NonEvaluable, "non-integer power of a negative value");
        const int sign = (a.sign < 0 && std::fmod(std::abs(p), 2.0) == 1.0) ? -1 : 1;
        return {sign, p * a.log2_abs};
      }
      case ExprOp::Pow2: return {1, eval_log(*e.lhs, n).to_double()};
      case ExprOp::Log2: {
        const LogNumber a = eval_log(*e.lhs, n);
        require(a.sign > 0, ErrorKind::NonEvaluable, "log2 of a non-positive value at n = " + detail::format_number(n));
        return LogNumber::from(a.log2_abs);
      }
      case ExprOp::Neg: {
        LogNumber a = eval_log(*e.lhs, n);
        a.sign = -a.sign;
        return a;
      }
    }
    return {};
  }

  static AsymptoticForm normalize(AsymptoticForm terms) {
    AsymptoticForm out;
    for (const auto& t : terms) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Monomial& m) { return detail::sig_equal(m.sig, t.sig); });
      if (it == out.end()) out.push_back(t);
      else it->coef += t.coef;
    }
    std::erase_if(out, [](const Monomial& m) { return std::abs(m.coef) <= 1e-300; });
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return detail::sig_less(b.sig, a.sig); });
    return out;
  }

  static std::optional<AsymptoticForm> asymptotic(const Node& e) {
    using Form = std::optional<AsymptoticForm>;
    switch (e.op) {
      case ExprOp::Const: return normalize({Monomial{e.value, {0, 0, 0, 0}}});
      case ExprOp::N: return AsymptoticForm{Monomial{1.0, {0, 1, 0, 0}}};
      case ExprOp::Growth: return AsymptoticForm{Monomial{1.0, e.growth->signature()}};
      case ExprOp::Neg: {
        Form a = asymptotic(*e.lhs);
        if (!a) return std::nullopt;
        for (auto& m : *a) m.coef = -m.coef;
        return a;
      }
      case ExprOp::Add: {
        Form a = asymptotic(*e.lhs);
        Form b = asymptotic(*e.rhs);
        if (!a || !b) return std::nullopt;
        a->insert(a->end(), b->begin(), b->end());
        return normalize(std::move(*a));
      }
      case ExprOp::Mul: {
        Form a = asymptotic(*e.lhs);
        Form b = asymptotic(*e.rhs);
        if (!a || !b) return std::nullopt;
        AsymptoticForm out;
        for (const auto& x : *a)
          for (const auto& y : *b) out.push_back({x.coef * y.coef, detail::sig_add(x.sig, y.sig)});
        return normalize(std::move(out));
      }
      case ExprOp::Div: {
        Form a = asymptotic(*e.lhs);
        Form b = asymptotic(*e.rhs);
        if (!a || !b || b->size() != 1) return std::nullopt;
        const Monomial d = b->front();
        for (auto& m : *a) {
          m.coef /= d.coef;
          m.sig = detail::sig_sub(m.sig, d.sig);
        }
        return normalize(std::move(*a));
      }
      case ExprOp::Pow: {
        Form a = asymptotic(*e.lhs);
        Form p = asymptotic(*e.rhs);
        if (!a || !p) return std::nullopt;
        if (p->empty()) return AsymptoticForm{Monomial{1.0, {0, 0, 0, 0}}};
        if (p->size() != 1 || detail::signature_sign(p->front().sig) != 0) return std::nullopt;
        const double k = p->front().coef;
        if (a->size() != 1 || a->front().coef <= 0) return std::nullopt;
        return AsymptoticForm{Monomial{std::pow(a->front().coef, k), detail::sig_scale(a->front().sig, k)}};
      }
      case ExprOp::Pow2: {
        Form p = asymptotic(*e.lhs);
        if (!p) return std::nullopt;
        Monomial out{1.0, {0, 0, 0, 0}};
        for (const auto& m : *p) {
          const Signature& s = m.sig;
          const int lead = detail::leading_index(s);
          if (lead == 4) {
            out.coef *= std::exp2(m.coef);
            continue;
          }
          // Only k*n, k*log n and k*loglog n exponents stay monomial.
          if (detail::signature_sign(detail::sig_sub(s, Signature{0, 1, 0, 0})) == 0) out.sig[0] += m.coef;
          else if (detail::signature_sign(detail::sig_sub(s, Signature{0, 0, 1, 0})) == 0) out.sig[1] += m.coef;
          else if (detail::signature_sign(detail::sig_sub(s, Signature{0, 0, 0, 1})) == 0) out.sig[2] += m.coef;
          else return std::nullopt;
        }
        return AsymptoticForm{out};
      }
      case ExprOp::Log2: {
        Form a = asymptotic(*e.lhs);
        if (!a || a->empty() || a->front().coef <= 0) return std::nullopt;
        // log2 of the leading term; lower-order terms only add o(1).
        const Monomial& m = a->front();
        if (std::abs(m.sig[3]) > detail::kSigTol) return std::nullopt;
        AsymptoticForm out{Monomial{m.sig[0], {0, 1, 0, 0}}, Monomial{m.sig[1], {0, 0, 1, 0}},
                           Monomial{m.sig[2], {0, 0, 0, 1}}, Monomial{std::log2(m.coef), {0, 0, 0, 0}}};
        return normalize(std::move(out));
      }
    }
    return std::nullopt;
  }

  static std::string to_string(const Node& e) {
    switch (e.op) {
      case ExprOp::Const: return detail::format_number(e.value);
      case ExprOp::N: return "n";
      case ExprOp::Growth: return "{" + e.growth->name() + "}";
      case ExprOp::Add: return "(" + to_string(*e.lhs) + " + " + to_string(*e.rhs) + ")";
      case ExprOp::Mul: return "(" + to_string(*e.lhs) + " * " + to_string(*e.rhs) + ")";
      case ExprOp::Div: return "(" + to_string(*e.lhs) + " / " + to_string(*e.rhs) + ")";
      case ExprOp::Pow: return "(" + to_string(*e.lhs) + ")^(" + to_string(*e.rhs) + ")";
      case ExprOp::Pow2: return "2^(" + to_string(*e.lhs) + ")";
      case ExprOp::Log2: return "log2(" + to_string(*e.lhs) + ")";
      case ExprOp::Neg: return "-(" + to_string(*e.lhs) + ")";
    }
    return "?";
  }

  std::shared_ptr<const Node> node_;

  friend class ExprParser;
};

/// Recursive-descent parser for BoundExpr.
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'n' | '{' class '}' | fn '(' expr ')' | '(' expr ')'
/// with fn in {log2, log, exp2}; "2^x" becomes an exact power of two.
class ExprParser {
 public:
  explicit ExprParser(std::string text) : text_(std::move(text)) {}

  BoundExpr parse() {
    BoundExpr e = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::UnrecognizedForm, what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  BoundExpr expr() {
    BoundExpr e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }
  BoundExpr term() {
    BoundExpr e = unary();
    for (;;) {
      if (accept('*')) e = e * unary();
      else if (accept('/')) e = e / unary();
      else return e;
    }
  }
  BoundExpr unary() {
    if (accept('-')) return -unary();
    return power();
  }
  BoundExpr power() {
    BoundExpr base = atom();
    if (accept('^')) {
      BoundExpr exponent = unary();
      if (base.op() == ExprOp::Const && base.node_->value == 2.0) return BoundExpr::pow2(exponent);
      return BoundExpr::pow(base, exponent);
    }
    return base;
  }
  BoundExpr atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) error("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return BoundExpr::constant(v);
    }
    if (accept('(')) {
      BoundExpr e = expr();
      expect(')');
      return e;
    }
    if (accept('{')) {
      const auto close = text_.find('}', pos_);
      if (close == std::string::npos) error("unterminated growth class");
      const std::string name = text_.substr(pos_, close - pos_);
      pos_ = close + 1;
      return BoundExpr::growth(GrowthClass::parse(name));
    }
    std::string ident;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ident += text_[pos_++];
    if (ident == "n") return BoundExpr::n();
    if (ident == "log2" || ident == "log" || ident == "exp2") {
      expect('(');
      BoundExpr arg = expr();
      expect(')');
      return ident == "exp2" ? BoundExpr::pow2(arg) : BoundExpr::log2(arg);
    }
    error(ident.empty() ? "unexpected character" : "unknown identifier '" + ident + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

inline BoundExpr BoundExpr::parse(const std::string& text) { return ExprParser(text).parse(); }

// ---------------------------------------------------------------------------
// Negligibility, closure, repetition

enum class Ternary { Yes, No, Undecided };

inline std::string to_string(Ternary t) {
  switch (t) {
    case Ternary::Yes: return "yes";
    case Ternary::No: return "no";
    case Ternary::Undecided: return "undecided";
  }
  return "?";
}

/// Grid n = 2^4 .. 2^20 used for numeric witnesses.
inline std::vector<double> witness_grid() {
  std::vector<double> grid;
  for (int k = 4; k <= 20; ++k) grid.push_back(std::exp2(k));
  return grid;
}

inline const std::vector<double>& witness_constants() {
  static const std::vector<double> c{1.0, 10.0, 100.0};
  return c;
}

struct NegligibilityWitness {
  std::vector<double> grid;
  std::vector<double> constants;
  /// holds[i][j]: eta(grid[j]) * constants[i] * T(grid[j]) < 1.
  std::vector<std::vector<bool>> holds;

  bool holds_everywhere() const {
    for (const auto& row : holds)
      for (bool h : row)
        if (!h) return false;
    return true;
  }
  /// True when, for every constant, the check holds from some grid point on.
  bool holds_on_tail() const {
    for (const auto& row : holds)
      if (row.empty() || !row.back()) return false;
    return true;
  }
};

struct NegligibilityResult {
  Ternary verdict = Ternary::Undecided;
  std::string rule;
  NegligibilityWitness witness;
};

inline NegligibilityWitness negligibility_witness(const BoundExpr& eta, const GrowthClass& T) {
  NegligibilityWitness w;
  w.grid = witness_grid();
  w.constants = witness_constants();
  for (double c : w.constants) {
    std::vector<bool> row;
    for (double n : w.grid) {
      const LogNumber v = eta.eval_log(n);
      const bool ok = v.sign <= 0 || v.log2_abs + std::log2(c) + T.log2_value(n) < 0.0;
      row.push_back(ok);
    }
    w.holds.push_back(std::move(row));
  }
  return w;
}

/// Is eta(n) < 1/g(n) for every g in Theta(T), for all but finitely many n?
/// For polynomial families this ranges over all exponents.
inline NegligibilityResult is_negligible(const BoundExpr& eta, const GrowthClass& T) {
  NegligibilityResult r;
  r.witness = negligibility_witness(eta, T);
  const auto form = eta.asymptotic();
  if (!form) {
    r.rule = "expression outside the monomial rule table; grid evidence only";
    return r;
  }
  if (form->empty() || form->front().coef < 0) {
    r.verdict = Ternary::Yes;
    r.rule = "eventually non-positive";
    return r;
  }
  const Signature lead = form->front().sig;
  if (!T.is_family()) {
    const int s = detail::signature_sign(detail::sig_add(lead, T.signature()));
    r.verdict = s < 0 ? Ternary::Yes : Ternary::No;
    r.rule = s < 0 ? "eta * T -> 0" : "eta * T bounded away from 0";
    return r;
  }
  const Signature base = T.base_function().signature();
  const int i = detail::leading_index(lead);
  const bool decays_faster = i < detail::leading_index(base) && lead[static_cast<std::size_t>(i)] < 0;
  r.verdict = decays_faster ? Ternary::Yes : Ternary::No;
  r.rule = decays_faster ? "eta decays faster than every power of " + T.base_function().name()
                         : "eta is at least some inverse power of " + T.base_function().name();
  return r;
}

struct RuleVerdict {
  bool holds = false;
  std::string rule;
  /// Grid point and value of the counterexample product, when one was found.
  std::optional<double> counterexample_n;
  std::optional<double> counterexample_value;
};

/// Closure of negl_T under sums and repeats r in R.
inline RuleVerdict check_closure(const GrowthClass& T, const GrowthClass& R) {
  RuleVerdict v;
  const Signature r_sig = R.signature();
  if (detail::signature_sign(r_sig) <= 0) {
    v.holds = true;
    v.rule = "additivity + constant repeats";
    return v;
  }
  if (T.is_family() && detail::poly_dominated(r_sig, T.base_function().signature())) {
    v.holds = true;
    v.rule = "additivity + polynomial repeats in the base function";
    return v;
  }
  // Counterexample: an eta that is negligible for T but r * eta is not.
  const GrowthClass f = T.base_function();
  BoundExpr eta = T.is_family()
                      ? BoundExpr::pow2(-(BoundExpr::log2(BoundExpr::growth(f)) * BoundExpr::log2(BoundExpr::growth(f))))
                      : BoundExpr::constant(1.0) / (BoundExpr::growth(f) * BoundExpr::log2(BoundExpr::growth(f)));
  v.rule = T.is_family() ? "repeats outside poly(base); eta = 2^(-log2(f)^2)" : "non-constant repeats; eta = 1/(f log2 f)";
  for (double n : witness_grid()) {
    // r * eta * f >= 1 means r * eta is not below 1/f at this n.
    const double lg = R.log2_value(n) + eta.eval_log(n).log2_abs + f.log2_value(n);
    if (lg >= 0.0) {
      v.counterexample_n = n;
      v.counterexample_value = std::exp2(std::min(lg, 1000.0));
      break;
    }
  }
  return v;
}

/// Does R * O(T) stay inside O(T)?
inline RuleVerdict check_repetition_consistency(const GrowthClass& T, const GrowthClass& R) {
  RuleVerdict v;
  const Signature r_sig = R.signature();
  if (detail::signature_sign(r_sig) <= 0) {
    v.holds = true;
    v.rule = "constant factor absorbed by O(T)";
    return v;
  }
  if (T.is_family() && detail::poly_dominated(r_sig, T.base_function().signature())) {
    v.holds = true;
    v.rule = "product of polynomials in the base function";
    return v;
  }
  v.rule = "R * T outgrows every constant multiple of T";
  const double n = witness_grid().back();
  v.counterexample_n = n;
  v.counterexample_value = R.value(n);
  return v;
}

enum class TableMeasure { Coherence, Entanglement, Magic };

/// Lower bound on the expected resource of an ensemble that fools T-time
/// observers: kappa + log2 T(n) with T's canonical representative, divided
/// by alpha - 1 for magic. kappa stands in for the omega(1) term.
inline double table_lower_bound(const GrowthClass& T, TableMeasure measure, double n, double kappa = 1.0,
                                int alpha = 3) {
  const GrowthForm f = T.form();
  require(f == GrowthForm::Poly || f == GrowthForm::NLogN || f == GrowthForm::Linear || f == GrowthForm::PolyLog ||
              f == GrowthForm::Log,
          ErrorKind::UnsupportedGrowthClass, "no table row for growth class " + T.name());
  require(n >= 4, ErrorKind::InvalidArgument, "table bounds need n >= 4");
  const double value = kappa + T.log2_value(n);
  if (measure == TableMeasure::Magic) {
    require(alpha >= 2, ErrorKind::InvalidArgument, "alpha must be at least 2");
    return value / (alpha - 1);
  }
  return value;
}

/// Classes in increasing observer power.
inline std::vector<GrowthClass> table_classes() {
  return {GrowthClass::log(), GrowthClass::polylog(), GrowthClass::linear(), GrowthClass::nlogn(),
          GrowthClass::poly()};
}

}  // namespace tprs
