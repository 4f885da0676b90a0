#include "chl/expr.hpp"

#include <cctype>

namespace chl {

namespace {

class Parser {
public:
  Parser(const std::string& s, const CycField::Ptr& f, const ExprEnv& env)
      : s_(s), f_(f), env_(env) {}

  CycElem parse() {
    CycElem v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(errc::bad_catalog, "trailing input in expression: " + s_);
    return v;
  }

private:
  const std::string& s_;
  const CycField::Ptr& f_;
  const ExprEnv& env_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  CycElem expr() {
    CycElem v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  CycElem term() {
    CycElem v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/')) {
        CycElem d = unary();
        if (d.is_zero()) fail(errc::bad_catalog, "division by zero in expression: " + s_);
        v = v / d;
      } else
        return v;
    }
  }

  CycElem unary() {
    if (eat('-')) return -unary();
    return power();
  }

  CycElem power() {
    CycElem v = atom();
    if (eat('^')) {
      long e = integer();
      v = v.pow(e);
    }
    return v;
  }

  long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = (s_[pos_++] == '-');
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail(errc::bad_catalog, "expected integer in expression: " + s_);
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  CycElem atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail(errc::bad_catalog, "unexpected end of expression: " + s_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return f_->from_rational(Rational(integer()));
    if (c == '(') {
      ++pos_;
      CycElem v = expr();
      if (!eat(')')) fail(errc::bad_catalog, "missing ')' in expression: " + s_);
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (eat('(')) {
        if (name == "conj") {
          CycElem v = expr();
          if (!eat(')')) fail(errc::bad_catalog, "missing ')' after conj: " + s_);
          return v.conj();
        }
        if (name == "zetaN") {
          long m = integer();
          if (!eat(')')) fail(errc::bad_catalog, "missing ')' after zetaN: " + s_);
          if (m < 1) fail(errc::bad_catalog, "zetaN needs a positive order: " + s_);
          return f_->subfield_root(static_cast<unsigned>(m), 1);
        }
        fail(errc::bad_catalog, "unknown function '" + name + "' in expression: " + s_);
      }
      auto it = env_.find(name);
      if (it == env_.end()) fail(errc::bad_catalog, "unknown symbol '" + name + "' in: " + s_);
      if (!it->second.field()->same_field(*f_))
        fail(errc::bad_catalog, "symbol '" + name + "' lives in a different field");
      return it->second;
    }
    fail(errc::bad_catalog, std::string("unexpected character '") + c + "' in expression: " + s_);
  }
};

} // namespace

CycElem eval_expr(const std::string& text, const CycField::Ptr& field, const ExprEnv& env) {
  return Parser(text, field, env).parse();
}

} // namespace chl
