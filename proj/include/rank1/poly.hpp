#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rank1 {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Multivariate polynomial with rational coefficients. Variables are named
/// by strings; a monomial maps each variable to a positive exponent.
class Poly {
public:
  using Monomial = std::map<std::string, unsigned>;

  Poly() = default;
  Poly(cpp_rational c)
  {
    if (c != 0)
      terms_[{}] = c;
  }
  Poly(int c) : Poly(cpp_rational(c)) {}
  static Poly var(std::string const &name)
  {
    Poly p;
    p.terms_[{{name, 1u}}] = 1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::map<Monomial, cpp_rational> const &terms() const { return terms_; }

  friend Poly operator+(Poly a, Poly const &b)
  {
    for (auto const &[m, c] : b.terms_)
      a.add(m, c);
    return a;
  }
  friend Poly operator-(Poly a, Poly const &b)
  {
    for (auto const &[m, c] : b.terms_)
      a.add(m, -c);
    return a;
  }
  friend Poly operator*(Poly const &a, Poly const &b)
  {
    Poly r;
    for (auto const &[ma, ca] : a.terms_)
      for (auto const &[mb, cb] : b.terms_) {
        Monomial m = ma;
        for (auto const &[v, e] : mb)
          m[v] += e;
        r.add(m, ca * cb);
      }
    return r;
  }
  friend bool operator==(Poly const &a, Poly const &b) { return a.terms_ == b.terms_; }

  std::string to_string() const
  {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (auto const &[m, c] : terms_) {
      if (!first)
        os << (c < 0 ? " - " : " + ");
      else if (c < 0)
        os << "-";
      first = false;
      cpp_rational a = c < 0 ? cpp_rational(-c) : c;
      bool unit = a == 1 && !m.empty();
      if (!unit)
        os << a;
      bool star = !unit;
      for (auto const &[v, e] : m) {
        os << (star ? "*" : "") << v;
        if (e > 1)
          os << "^" << e;
        star = true;
      }
    }
    return os.str();
  }

private:
  void add(Monomial const &m, cpp_rational const &c)
  {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != 0)
        terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }

  std::map<Monomial, cpp_rational> terms_;
};

/// num/den; no cancellation is attempted, equality is by cross multiplication.
struct RationalFunction {
  Poly num{0};
  Poly den{1};

  RationalFunction() = default;
  RationalFunction(Poly n) : num(std::move(n)) {}
  RationalFunction(Poly n, Poly d) : num(std::move(n)), den(std::move(d))
  {
    if (den.is_zero())
      throw std::domain_error("rational function with zero denominator");
  }

  friend RationalFunction operator+(RationalFunction const &a, RationalFunction const &b)
  {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator-(RationalFunction const &a, RationalFunction const &b)
  {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator*(RationalFunction const &a, RationalFunction const &b)
  {
    return {a.num * b.num, a.den * b.den};
  }
  friend RationalFunction operator/(RationalFunction const &a, RationalFunction const &b)
  {
    if (b.num.is_zero())
      throw std::domain_error("division by the zero rational function");
    return {a.num * b.den, a.den * b.num};
  }
  /// Identity of rational functions: a.num * b.den == b.num * a.den.
  friend bool identical(RationalFunction const &a, RationalFunction const &b)
  {
    return a.num * b.den == b.num * a.den;
  }
};

struct ExpressionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parsed arithmetic expression over integers and named symbols with
/// + - * / and non-negative integer powers.
class Expression {
public:
  Expression() = default;
  explicit Expression(std::string text) : text_(std::move(text))
  {
    std::size_t pos = 0;
    root_ = parse_sum(pos);
    skip(pos);
    if (pos != text_.size())
      throw ExpressionError("expression '" + text_ + "': unexpected '" + text_.substr(pos) + "'");
  }

  std::string const &text() const { return text_; }

  template <class T>
  T eval(std::function<T(std::string const &)> const &var) const
  {
    if (!root_)
      throw ExpressionError("empty expression");
    return eval_node<T>(*root_, var);
  }

  /// Symbolic value with the given substitutions; other symbols stay free.
  RationalFunction symbolic(std::map<std::string, RationalFunction> const &subst = {}) const
  {
    return eval<RationalFunction>([&](std::string const &v) {
      auto it = subst.find(v);
      return it == subst.end() ? RationalFunction(Poly::var(v)) : it->second;
    });
  }

  cpp_rational numeric(std::map<std::string, cpp_rational> const &values) const
  {
    return eval<cpp_rational>([&](std::string const &v) {
      auto it = values.find(v);
      if (it == values.end())
        throw ExpressionError("expression '" + text_ + "': no value for symbol " + v);
      return it->second;
    });
  }

private:
  struct Node {
    char op = 0; // 'n' number, 'v' symbol, '~' negation, or a binary operator
    cpp_int value;
    std::string name;
    unsigned exponent = 0;
    std::shared_ptr<Node> a, b;
  };

  void skip(std::size_t &pos) const
  {
    while (pos < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos])))
      ++pos;
  }

  std::shared_ptr<Node> parse_sum(std::size_t &pos) const
  {
    auto lhs = parse_product(pos);
    for (;;) {
      skip(pos);
      if (pos >= text_.size() || (text_[pos] != '+' && text_[pos] != '-'))
        return lhs;
      char op = text_[pos++];
      auto n = std::make_shared<Node>();
      n->op = op;
      n->a = lhs;
      n->b = parse_product(pos);
      lhs = n;
    }
  }

  std::shared_ptr<Node> parse_product(std::size_t &pos) const
  {
    auto lhs = parse_unary(pos);
    for (;;) {
      skip(pos);
      if (pos >= text_.size() || (text_[pos] != '*' && text_[pos] != '/'))
        return lhs;
      char op = text_[pos++];
      auto n = std::make_shared<Node>();
      n->op = op;
      n->a = lhs;
      n->b = parse_unary(pos);
      lhs = n;
    }
  }

  std::shared_ptr<Node> parse_unary(std::size_t &pos) const
  {
    skip(pos);
    if (pos < text_.size() && text_[pos] == '-') {
      ++pos;
      auto n = std::make_shared<Node>();
      n->op = '~';
      n->a = parse_unary(pos);
      return n;
    }
    auto base = parse_atom(pos);
    skip(pos);
    if (pos < text_.size() && text_[pos] == '^') {
      ++pos;
      skip(pos);
      std::size_t start = pos;
      while (pos < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos])))
        ++pos;
      if (start == pos)
        throw ExpressionError("expression '" + text_ + "': exponent must be a non-negative integer");
      auto n = std::make_shared<Node>();
      n->op = '^';
      n->a = base;
      n->exponent = static_cast<unsigned>(std::stoul(text_.substr(start, pos - start)));
      return n;
    }
    return base;
  }

  std::shared_ptr<Node> parse_atom(std::size_t &pos) const
  {
    skip(pos);
    if (pos >= text_.size())
      throw ExpressionError("expression '" + text_ + "': unexpected end");
    char c = text_[pos];
    auto n = std::make_shared<Node>();
    if (c == '(') {
      ++pos;
      n = parse_sum(pos);
      skip(pos);
      if (pos >= text_.size() || text_[pos] != ')')
        throw ExpressionError("expression '" + text_ + "': missing ')'");
      ++pos;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos])))
        ++pos;
      n->op = 'n';
      n->value = cpp_int(text_.substr(start, pos - start));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos])) || text_[pos] == '_'))
        ++pos;
      n->op = 'v';
      n->name = text_.substr(start, pos - start);
      return n;
    }
    throw ExpressionError("expression '" + text_ + "': unexpected '" + std::string(1, c) + "'");
  }

  template <class T>
  static T eval_node(Node const &n, std::function<T(std::string const &)> const &var)
  {
    switch (n.op) {
    case 'n':
      return T(cpp_rational(n.value));
    case 'v':
      return var(n.name);
    case '~':
      return T(cpp_rational(0)) - eval_node<T>(*n.a, var);
    case '+':
      return eval_node<T>(*n.a, var) + eval_node<T>(*n.b, var);
    case '-':
      return eval_node<T>(*n.a, var) - eval_node<T>(*n.b, var);
    case '*':
      return eval_node<T>(*n.a, var) * eval_node<T>(*n.b, var);
    case '/': {
      T d = eval_node<T>(*n.b, var);
      if constexpr (std::is_same_v<T, cpp_rational>)
        if (d == 0)
          throw std::domain_error("division by zero");
      return eval_node<T>(*n.a, var) / d;
    }
    case '^': {
      T base = eval_node<T>(*n.a, var);
      T r(cpp_rational(1));
      for (unsigned i = 0; i < n.exponent; ++i)
        r = r * base;
      return r;
    }
    }
    throw ExpressionError("bad expression node");
  }

  std::string text_;
  std::shared_ptr<Node> root_;
};

inline bool is_integer(cpp_rational const &x) { return denominator(x) == 1; }

} // namespace rank1
