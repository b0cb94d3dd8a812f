#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "uhp/expr.hpp"

namespace uhp {

// Recursive-descent parser for the prefix expression grammar used by
// battery and config files (see docs/expression-grammar.md):
//
//   expr   = "var" | "cayley" | "cayley_inv" | number
//          | "const(" number ")"
//          | "sum(" expr {"," expr} ")" | "prod(" expr {"," expr} ")"
//          | "pow(" expr "," number ["," cut] ")"
//          | "scale(" number "," expr ")" | "shift(" number "," expr ")"
//          | "mobius(" number "," number "," number "," number "," expr ")"
//   cut    = "cut(" real "," number ")"
//   number = complex literal, e.g.  2  -0.5  1e-3  i  -2i  1+2i  0.5-1.5i
namespace parse_detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  // One signed floating literal, without any trailing 'i'.
  double real_number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  // Complex literal: [real][(+|-)imag]i forms, or a pure real.
  cplx complex_number() {
    skip_ws();
    double sign = 1.0;
    if (try_consume('-')) sign = -1.0;
    else try_consume('+');

    skip_ws();
    // Bare "i" or "-i".
    if (pos_ < text_.size() && text_[pos_] == 'i' && !followed_by_alnum(pos_ + 1)) {
      ++pos_;
      return cplx{0.0, sign};
    }
    double first = sign * unsigned_number();
    if (pos_ < text_.size() && text_[pos_] == 'i' && !followed_by_alnum(pos_ + 1)) {
      ++pos_;
      return cplx{0.0, first};
    }
    // Optional imaginary tail.
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const double isign = text_[pos_] == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == 'i' && !followed_by_alnum(pos_ + 1)) {
        ++pos_;
        return cplx{first, isign};
      }
      const char* begin = text_.data() + pos_;
      char* end = nullptr;
      const double mag = std::strtod(begin, &end);
      if (end != begin) {
        pos_ += static_cast<std::size_t>(end - begin);
        if (pos_ < text_.size() && text_[pos_] == 'i' && !followed_by_alnum(pos_ + 1)) {
          ++pos_;
          return cplx{first, isign * mag};
        }
      }
      pos_ = save;  // the sign belonged to the surrounding context
    }
    return cplx{first, 0.0};
  }

  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  std::size_t position() const { return pos_; }

 private:
  bool followed_by_alnum(std::size_t p) const {
    return p < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_' ||
            text_[p] == '.');
  }

  double unsigned_number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline Expr parse_expr(Cursor& cur);

inline std::vector<Expr> parse_args(Cursor& cur, std::size_t min_count) {
  cur.expect('(');
  std::vector<Expr> args;
  args.push_back(parse_expr(cur));
  while (cur.try_consume(',')) args.push_back(parse_expr(cur));
  cur.expect(')');
  if (args.size() < min_count) cur.fail("too few arguments");
  return args;
}

inline Expr parse_expr(Cursor& cur) {
  const char c = cur.peek();
  if (c == '\0') cur.fail("unexpected end of input");
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
      c == '.' || (c == 'i' && false))
    return constant(cur.complex_number());

  if (std::isalpha(static_cast<unsigned char>(c))) {
    std::string head = cur.ident();
    if (head == "var") return variable();
    if (head == "i") return constant(imag_unit);
    if (head == "cayley") return mobius_comp(cayley_map(), variable());
    if (head == "cayley_inv") return mobius_comp(cayley_inverse_map(), variable());
    if (head == "const") {
      cur.expect('(');
      const cplx v = cur.complex_number();
      cur.expect(')');
      return constant(v);
    }
    if (head == "sum") return sum(parse_args(cur, 1));
    if (head == "prod") return product(parse_args(cur, 1));
    if (head == "scale" || head == "shift") {
      cur.expect('(');
      const cplx v = cur.complex_number();
      cur.expect(',');
      Expr child = parse_expr(cur);
      cur.expect(')');
      return head == "scale" ? scale_arg(v, child) : shift_arg(v, child);
    }
    if (head == "pow") {
      cur.expect('(');
      Expr child = parse_expr(cur);
      cur.expect(',');
      const cplx nu = cur.complex_number();
      BranchSpec br = BranchSpec::principal();
      if (cur.try_consume(',')) {
        const std::string kw = cur.ident();
        if (kw != "cut") cur.fail("expected cut(theta, point)");
        cur.expect('(');
        br.theta_cut = cur.real_number();
        cur.expect(',');
        br.branch_point = cur.complex_number();
        cur.expect(')');
      }
      cur.expect(')');
      return power(child, nu, br);
    }
    if (head == "mobius") {
      cur.expect('(');
      cplx coeff[4];
      for (int k = 0; k < 4; ++k) {
        coeff[k] = cur.complex_number();
        cur.expect(',');
      }
      Expr child = parse_expr(cur);
      cur.expect(')');
      return mobius_comp(MobiusMap(coeff[0], coeff[1], coeff[2], coeff[3]), child);
    }
    cur.fail("unknown form '" + head + "'");
  }
  cur.fail("unexpected character");
}

inline std::string render_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string render_complex(cplx z) {
  if (z.imag() == 0.0) return render_real(z.real());
  std::string s;
  if (z.real() != 0.0) {
    s = render_real(z.real());
    if (z.imag() >= 0.0) s += "+";
  }
  if (z.imag() == 1.0) s += "i";
  else if (z.imag() == -1.0) s += "-i";
  else s += render_real(z.imag()) + "i";
  return s;
}

}  // namespace parse_detail

inline Expr parse_expr(std::string_view text) {
  parse_detail::Cursor cur(text);
  Expr e = parse_detail::parse_expr(cur);
  if (!cur.eof()) cur.fail("trailing input");
  return e;
}

inline cplx parse_complex(std::string_view text) {
  parse_detail::Cursor cur(text);
  const cplx v = cur.complex_number();
  if (!cur.eof()) cur.fail("trailing input");
  return v;
}

inline std::string to_string(const Expr& e) {
  using parse_detail::render_complex;
  using parse_detail::render_real;
  switch (e->kind) {
    case ExprKind::constant:
      return "const(" + render_complex(e->value) + ")";
    case ExprKind::variable:
      return "var";
    case ExprKind::sum:
    case ExprKind::product: {
      std::string s = e->kind == ExprKind::sum ? "sum(" : "prod(";
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += ", ";
        s += to_string(e->children[i]);
      }
      return s + ")";
    }
    case ExprKind::mobius_comp: {
      const MobiusMap& m = e->map;
      return "mobius(" + render_complex(m.a) + ", " + render_complex(m.b) + ", " +
             render_complex(m.c) + ", " + render_complex(m.d) + ", " +
             to_string(e->children[0]) + ")";
    }
    case ExprKind::power: {
      std::string s = "pow(" + to_string(e->children[0]) + ", " +
                      render_complex(e->value);
      if (e->branch.theta_cut != pi || e->branch.branch_point != cplx{0.0})
        s += ", cut(" + render_real(e->branch.theta_cut) + ", " +
             render_complex(e->branch.branch_point) + ")";
      return s + ")";
    }
    case ExprKind::scale_arg:
      return "scale(" + render_complex(e->value) + ", " + to_string(e->children[0]) + ")";
    case ExprKind::shift_arg:
      return "shift(" + render_complex(e->value) + ", " + to_string(e->children[0]) + ")";
  }
  return "?";
}

}  // namespace uhp
