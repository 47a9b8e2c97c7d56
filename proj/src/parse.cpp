#include "periodet/parse.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include "json.hpp"

#include "periodet/error.hpp"
#include "periodet/resultant.hpp"

namespace periodet {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  BivarPoly parse() {
    BivarPoly p = sum();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  int peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : -1;
  }

  static bool starts_factor(int c) {
    return c == 'x' || c == 'y' || c == 'i' || c == '(' || c == '.' || (c >= '0' && c <= '9');
  }

  BivarPoly sum() {
    BivarPoly acc;
    int c = peek();
    bool negate = false;
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    acc = negate ? -term() : term();
    for (c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      const BivarPoly t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  BivarPoly term() {
    BivarPoly acc = factor();
    for (;;) {
      int c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  int exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 4) fail("exponent too large");
    return std::atoi(std::string(s_.substr(start, pos_ - start)).c_str());
  }

  BivarPoly factor() {
    const int c = peek();
    if (c == 'x' || c == 'y') {
      ++pos_;
      const int e = exponent();
      return c == 'x' ? BivarPoly::monomial(e, 0) : BivarPoly::monomial(0, e);
    }
    if (c == 'i') {
      ++pos_;
      return BivarPoly::constant(cplx(0.0, 1.0));
    }
    if (c == '(') {
      ++pos_;
      BivarPoly p = sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      const int e = exponent();
      if (e > 64) fail("exponent of a group above 64");
      BivarPoly r = BivarPoly::constant(1.0);
      for (int k = 0; k < e; ++k) r = r * p;
      return r;
    }
    if (c == '.' || (c >= '0' && c <= '9')) {
      const char* begin = s_.data() + pos_;
      // strtod needs a terminated buffer; copy the longest numeric prefix.
      std::size_t end = pos_;
      while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' || s_[end] == 'e' ||
                                 s_[end] == 'E' ||
                                 ((s_[end] == '+' || s_[end] == '-') && end > pos_ && (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
        ++end;
      const std::string buf(begin, end - pos_);
      char* stop = nullptr;
      const double v = std::strtod(buf.c_str(), &stop);
      if (stop != buf.c_str() + buf.size()) fail("malformed number");
      pos_ += static_cast<std::size_t>(stop - buf.c_str());
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return BivarPoly::constant(cplx(0.0, v));
      }
      return BivarPoly::constant(v);
    }
    if (c < 0) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }
};

BivarPoly from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, std::string("JSON: ") + e.what() + " at offset " + std::to_string(e.byte));
  }
  if (j.is_object()) {
    if (!j.contains("terms")) throw Error(ErrorKind::SyntaxError, "JSON object without \"terms\"");
    j = j["terms"];
  }
  if (!j.is_array()) throw Error(ErrorKind::SyntaxError, "JSON polynomial must be a list of terms");
  BivarPoly::CoeffMap m;
  for (const auto& t : j) {
    try {
      const int i = t.at("i").get<int>(), k = t.at("j").get<int>();
      if (i < 0 || k < 0) throw Error(ErrorKind::SyntaxError, "negative exponent in JSON term");
      m[{i, k}] += cplx(t.value("re", 0.0), t.value("im", 0.0));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::SyntaxError, std::string("JSON term: ") + e.what());
    }
  }
  return BivarPoly(std::move(m));
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

BivarPoly parse_poly_text(std::string_view text) {
  std::size_t k = 0;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  if (k < text.size() && (text[k] == '[' || text[k] == '{')) return from_json(text);
  return Parser(text).parse();
}

PolySpec parse_poly(std::string_view text) {
  PolySpec spec;
  spec.source = std::string(text);
  spec.poly = parse_poly_text(text);
  const auto deg = spec.poly.degree();
  if (!deg || *deg < 2)
    throw Error(ErrorKind::InvalidInput, "unsupported: degree " + (deg ? std::to_string(*deg) : std::string("-inf")) +
                                             " < 2");
  spec.n = *deg - 1;
  const HomogeneousTop top = spec.poly.top();
  spec.h0_nonzero = top[0] != cplx(0.0);
  spec.hn1_nonzero = top[spec.n + 1] != cplx(0.0);
  if (spec.h0_nonzero) {
    const SigmaResult s = discriminant_sigma(top);
    spec.sigma = s.value;
    spec.sigma_nonzero = s.generic;
  }
  return spec;
}

std::string format_poly(const BivarPoly& p) {
  std::string out;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    const auto [ij, c] = *it;
    if (!out.empty()) out += " + ";
    out += "(" + number(c.real()) + (c.imag() < 0 ? "-" : "+") + number(std::abs(c.imag())) + "i)";
    if (ij.first > 0) out += "*x^" + std::to_string(ij.first);
    if (ij.second > 0) out += "*y^" + std::to_string(ij.second);
  }
  return out.empty() ? "0" : out;
}

}  // namespace periodet
