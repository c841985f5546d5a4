#include "icd/sexpr.hpp"

#include <cctype>
#include <cstdint>

#include "icd/error.hpp"

namespace icd {

std::string SExpr::str() const {
  if (!is_list) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].str();
  }
  return out + ")";
}

namespace {

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    while (skip_space()) out.push_back(expr());
    return out;
  }

private:
  bool skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        return true;
      }
    }
    return false;
  }

  SExpr expr() {
    SExpr e;
    e.line = line_;
    const char c = text_[pos_];
    if (c == ')') throw DecodeError("unexpected ')'", line_);
    if (c == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        if (!skip_space()) throw DecodeError("unterminated list opened here", e.line);
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(expr());
      }
    }
    if (c == '"') {
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) throw DecodeError("unterminated string literal", e.line);
        const char d = text_[pos_++];
        if (d == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            e.atom += '"';
            ++pos_;
            continue;
          }
          return e;
        }
        if (d == '\n') ++line_;
        e.atom += d;
      }
    }
    if (c == '|') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '|') {
        if (text_[pos_] == '\n') ++line_;
        e.atom += text_[pos_++];
      }
      if (pos_ >= text_.size()) throw DecodeError("unterminated quoted symbol", e.line);
      ++pos_;
      return e;
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"') break;
      e.atom += d;
      ++pos_;
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

bool is_decimal(const std::string& s) {
  if (s.empty()) return false;
  bool digit = false;
  bool dot = false;
  for (char c : s) {
    if (c == '.') {
      if (dot) return false;
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else {
      return false;
    }
  }
  return digit && s.front() != '.' && s.back() != '.';
}

Rational parse_decimal(const std::string& s, int line) {
  const auto dot = s.find('.');
  const std::string whole = s.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (whole.size() + frac.size() > 18) throw DecodeError("numeral too long: " + s, line);
  std::int64_t num = 0;
  for (char c : whole + frac) num = num * 10 + (c - '0');
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(num, den);
}

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) { return Reader(text).all(); }

bool is_numeric_literal(const SExpr& e) {
  if (e.is_atom()) return is_decimal(e.atom);
  const auto h = e.head();
  if (h == "-" && e.items.size() == 2) return is_numeric_literal(e.items[1]);
  if (h == "/" && e.items.size() == 3) return is_numeric_literal(e.items[1]) && is_numeric_literal(e.items[2]);
  return false;
}

Rational numeric_value(const SExpr& e) {
  if (e.is_atom()) {
    if (!is_decimal(e.atom)) throw DecodeError("expected a number, got '" + e.atom + "'", e.line);
    return parse_decimal(e.atom, e.line);
  }
  const auto h = e.head();
  if (h == "-" && e.items.size() == 2) return -numeric_value(e.items[1]);
  if (h == "/" && e.items.size() == 3) {
    const Rational d = numeric_value(e.items[2]);
    if (d == Rational(0)) throw DecodeError("division by zero", e.line);
    return numeric_value(e.items[1]) / d;
  }
  throw DecodeError("expected a numeric literal, got " + e.str(), e.line);
}

std::string smt_int_literal(std::int64_t v) {
  return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}

std::string smt_real_literal(const Rational& r) {
  const bool neg = r.num() < 0;
  const std::int64_t n = neg ? -r.num() : r.num();
  std::string body;
  // Denominators of the form 2^a 5^b print as terminating decimals.
  std::int64_t scale = 1;
  int digits = 0;
  while (scale % r.den() != 0 && digits < 18) {
    scale *= 10;
    ++digits;
  }
  if (scale % r.den() == 0 && n <= INT64_MAX / (scale / r.den())) {
    std::string s = std::to_string(n * (scale / r.den()));
    if (digits == 0) {
      body = s + ".0";
    } else {
      if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
      s.insert(s.size() - static_cast<std::size_t>(digits), ".");
      body = s;
    }
  } else {
    body = "(/ " + std::to_string(n) + ".0 " + std::to_string(r.den()) + ".0)";
  }
  return neg ? "(- " + body + ")" : body;
}

}  // namespace icd
