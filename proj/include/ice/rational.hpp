#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ice {

// All payoffs and probabilities in the library are exact rationals.
// mpq_class keeps values canonical (lowest terms, positive denominator)
// as long as every entry point canonicalizes, which rat() and parse_rat() do.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q" with optional sign on the numerator only.
inline Rat parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = text[0] == '-' || text[0] == '+' ? 1 : 0;
  if (pos == text.size()) throw std::invalid_argument("bare sign is not a rational");
  bool seen_slash = false;
  for (std::size_t k = pos; k < text.size(); ++k) {
    char c = text[k];
    if (c == '/' && !seen_slash && k > pos && k + 1 < text.size()) {
      seen_slash = true;
      continue;
    }
    if (c < '0' || c > '9')
      throw std::invalid_argument("bad rational literal '" + text + "'");
  }
  Rat r(text[0] == '+' ? text.substr(1) : text);  // mpq_set_str rejects '+'
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace ice
