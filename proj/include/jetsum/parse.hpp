#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "jetsum/errors.hpp"
#include "jetsum/field.hpp"
#include "jetsum/form.hpp"
#include "jetsum/laurent.hpp"

namespace jetsum {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::string strip(std::string s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline long long to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + ": '" + s + "'");
  }
}

}  // namespace detail

// Field specification: "p" for a prime field, "p^k:c0,c1,...,ck" for an
// extension with the modulus coefficients constant term first.
inline std::unique_ptr<FieldSpec> parse_field(const std::string& spec) {
  std::string s = detail::strip(spec);
  auto caret = s.find('^');
  try {
    if (caret == std::string::npos) {
      int p = int(detail::to_int(s, "prime"));
      return std::make_unique<FieldSpec>(p, std::vector<int>{0, 1});
    }
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError("extension field needs modulus: p^k:c0,...,ck");
    int p = int(detail::to_int(s.substr(0, caret), "prime"));
    int k = int(detail::to_int(s.substr(caret + 1, colon - caret - 1), "extension degree"));
    std::vector<int> mod;
    for (auto& part : detail::split(s.substr(colon + 1), ','))
      mod.push_back(int(detail::to_int(detail::strip(part), "modulus coefficient")));
    if (int(mod.size()) != k + 1)
      throw ParseError("modulus needs k+1 coefficients for degree k");
    return std::make_unique<FieldSpec>(p, std::move(mod));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("bad field spec '") + spec + "': " + ex.what());
  }
}

// Form specification: "diag:a1,...,an" (degree from context) or a monomial
// list "i1i2...id=c;..." with single-digit 1-based variable indices.
inline FormTemplate parse_form_template(const std::string& spec, int d_hint, int n_hint = 0) {
  std::string s = detail::strip(spec);
  FormTemplate tmpl;
  if (s.rfind("diag:", 0) == 0) {
    if (d_hint < 1) throw ParseError("diagonal form needs the degree (--d)");
    tmpl.diagonal = true;
    tmpl.d = d_hint;
    for (auto& part : detail::split(s.substr(5), ','))
      tmpl.diag_coeffs.push_back(detail::to_int(detail::strip(part), "diagonal coefficient"));
    tmpl.n = int(tmpl.diag_coeffs.size());
    if (n_hint > 0 && n_hint != tmpl.n)
      throw ParseError("diagonal form has " + std::to_string(tmpl.n) + " variables, --n says " +
                       std::to_string(n_hint));
    return tmpl;
  }
  int n_seen = 0, d_seen = 0;
  for (auto& entry : detail::split(s, ';')) {
    std::string t = detail::strip(entry);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("monomial entry needs '=': '" + t + "'");
    std::string idx = detail::strip(t.substr(0, eq));
    long long c = detail::to_int(detail::strip(t.substr(eq + 1)), "monomial coefficient");
    std::vector<int> tuple;
    for (char ch : idx) {
      if (ch < '1' || ch > '9')
        throw ParseError("monomial indices are single digits 1..9: '" + idx + "'");
      tuple.push_back(ch - '1');
      n_seen = std::max(n_seen, ch - '0');
    }
    if (d_seen == 0) d_seen = int(tuple.size());
    if (int(tuple.size()) != d_seen) throw ParseError("monomials of mixed degree");
    tmpl.monomials.emplace_back(std::move(tuple), c);
  }
  if (tmpl.monomials.empty()) throw ParseError("empty form spec");
  tmpl.d = d_seen;
  if (d_hint > 0 && d_hint != d_seen)
    throw ParseError("monomials have degree " + std::to_string(d_seen) + ", --d says " +
                     std::to_string(d_hint));
  tmpl.n = std::max(n_seen, n_hint);
  return tmpl;
}

namespace detail {

struct TermFactors {
  long long coeff = 1;
  int spow = 0;
  long long tpow = 0;
  bool has_t = false;
};

inline TermFactors parse_term(const std::string& term) {
  TermFactors out;
  for (auto& raw : split(term, '*')) {
    std::string fct = strip(raw);
    if (fct.empty()) throw ParseError("empty factor in term '" + term + "'");
    if (fct[0] == 's' || fct[0] == 't') {
      long long e = 1;
      if (fct.size() > 1) {
        if (fct[1] != '^') throw ParseError("bad factor '" + fct + "'");
        e = to_int(fct.substr(2), "exponent");
      }
      if (fct[0] == 's') {
        if (e < 0) throw ParseError("negative s exponent");
        out.spow += int(e);
      } else {
        out.tpow += e;
        out.has_t = true;
      }
    } else {
      out.coeff *= to_int(fct, "coefficient");
    }
  }
  return out;
}

// split a sum on +/- signs at top level
inline std::vector<std::pair<std::string, int>> split_sum(const std::string& s) {
  std::vector<std::pair<std::string, int>> terms;
  std::string cur;
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && !(i > 0 && s[i - 1] == '^')) {
      if (!strip(cur).empty()) terms.emplace_back(strip(cur), sign);
      sign = c == '-' ? -1 : 1;
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty()) terms.emplace_back(strip(cur), sign);
  return terms;
}

}  // namespace detail

// Jet polynomial literal: sums of "c*s^i*t^j" monomials, e.g.
// "2*t^2 + s*t + 3*s^2". Coefficients are integers through the prime
// subfield.
inline JetPoly parse_jetpoly(const std::string& spec, const FieldSpec& f, int m) {
  JetPoly out(f, m);
  std::string s = detail::strip(spec);
  if (s == "0" || s.empty()) return out;
  for (auto& [term, sign] : detail::split_sum(s)) {
    auto tf = detail::parse_term(term);
    if (tf.tpow < 0) throw ParseError("negative t exponent in a polynomial literal");
    long long c = tf.coeff * sign;
    u16 cf = f.from_scalar(int(((c % f.p()) + f.p()) % f.p()));
    if (tf.spow > m) continue;  // truncated away
    out = out + JetPoly::monomial(f, m, cf, tf.spow, int(tf.tpow));
  }
  return out;
}

// Jet Laurent literal: fractional parts only, so every term needs t^-j with
// j >= 1 (or is zero). The floor must be deep enough for every term.
inline JetLaurent parse_jetlaurent(const std::string& spec, const FieldSpec& f, int m, int floor) {
  JetLaurent out(f, m, floor);
  std::string s = detail::strip(spec);
  if (s == "0" || s.empty()) return out;
  for (auto& [term, sign] : detail::split_sum(s)) {
    auto tf = detail::parse_term(term);
    if (!tf.has_t || tf.tpow >= 0)
      throw ParseError("fractional literal needs t^-j factors: '" + term + "'");
    if (tf.tpow < floor)
      throw ParseError("term below the floor " + std::to_string(floor) + ": '" + term + "'");
    long long c = tf.coeff * sign;
    u16 cf = f.from_scalar(int(((c % f.p()) + f.p()) % f.p()));
    if (tf.spow > m) continue;
    int j = int(-tf.tpow);
    out.set_digit(tf.spow, j, f.add(out.digit(tf.spow, j), cf));
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (auto& part : detail::split(s, ','))
    out.push_back(int(detail::to_int(detail::strip(part), "list entry")));
  return out;
}

}  // namespace jetsum
