#pragma once
// Recursive-descent parser for ring-element expressions:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('-'|'+') unary | power
//   power := atom ('^' integer)?
//   atom  := integer | identifier | '(' expr ')'
// The value type V supplies + - * / and the callbacks build leaves.

#include <cctype>
#include <functional>
#include <string>

#include <gmpxx.h>

#include "pc/errors.hpp"

namespace pc {

template <class V>
class ExprParser {
 public:
  using VarFn = std::function<V(const std::string&)>;
  using ConstFn = std::function<V(const mpz_class&)>;

  ExprParser(VarFn var, ConstFn cst) : var_(std::move(var)), cst_(std::move(cst)) {}

  V parse(const std::string& s) {
    s_ = s;
    i_ = 0;
    V v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("cannot parse '" + s_ + "' at position " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  V expr() {
    V v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  V term() {
    V v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = v / unary();
      else
        return v;
    }
  }
  V unary() {
    if (eat('-')) return cst_(0) - unary();
    if (eat('+')) return unary();
    return power();
  }
  V power() {
    V base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("exponent must be an integer");
    long e = std::stol(s_.substr(st, i_ - st));
    V r = cst_(1);
    for (long k = 0; k < e; ++k) r = r * base;
    if (neg) r = cst_(1) / r;
    return r;
  }
  V atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      V v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return cst_(mpz_class(s_.substr(st, i_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return var_(s_.substr(st, i_ - st));
    }
    fail("unexpected character");
  }

  VarFn var_;
  ConstFn cst_;
  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace pc
