#include "bfnorm/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace bfnorm {

namespace {

class AnfParser {
public:
  AnfParser(std::string_view text, int m) : text_(text), anf_(m), m_(m) {}

  Anf run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty ANF expression", pos_);
    for (;;) {
      parse_term();
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '+') throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
      ++pos_;
    }
    return std::move(anf_);
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void parse_term() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("missing term", pos_);
    const char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      if (c == '1') anf_.flip(0);
      return;
    }
    std::uint32_t mask = 0;
    for (;;) {
      mask |= parse_variable();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    anf_.flip(mask);
  }

  std::uint32_t parse_variable() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ == text_.size() || text_[pos_] != 'x') throw ParseError("expected variable", start);
    ++pos_;
    std::size_t digits = 0;
    long index = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      index = index * 10 + (text_[pos_] - '0');
      ++pos_;
      if (++digits > 4) throw ParseError("variable index too long", start);
    }
    if (digits == 0) throw ParseError("expected variable index", pos_);
    if (index < 1 || index > m_)
      throw ParseError("variable x" + std::to_string(index) + " out of range for m=" + std::to_string(m_), start);
    return std::uint32_t{1} << (index - 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Anf anf_;
  int m_;
};

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Anf parse_anf(std::string_view text, int m) {
  if (m < 1 || m > kMaxVars) throw Error("number of variables must be in [1, 16]");
  return AnfParser(text, m).run();
}

std::string format_anf(const Anf& a) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t i = 0; i < a.num_bits(); ++i)
    if (a.get(i)) masks.push_back(i);
  if (masks.empty()) return "0";
  // Lexicographic on variable lists: compare lowest differing variable; the
  // mask owning it comes first.  Bit-reversal turns this into integer order.
  auto lex_key = [&](std::uint32_t mask) {
    std::uint32_t rev = 0;
    for (int i = 0; i < a.num_vars(); ++i)
      if ((mask >> i) & 1) rev |= std::uint32_t{1} << (31 - i);
    return rev;
  };
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t x, std::uint32_t y) {
    const int dx = std::popcount(x), dy = std::popcount(y);
    if (dx != dy) return dx > dy;
    return lex_key(x) > lex_key(y);
  });
  std::string out;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if (k) out += " + ";
    if (masks[k] == 0) {
      out += '1';
      continue;
    }
    bool first = true;
    for (int i = 0; i < a.num_vars(); ++i) {
      if (!((masks[k] >> i) & 1)) continue;
      if (!first) out += '*';
      out += 'x';
      out += std::to_string(i + 1);
      first = false;
    }
  }
  return out;
}

std::string to_hex(const BoolFun& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t bytes = std::max<std::size_t>(1, f.num_bits() / 8);
  std::string out;
  out.reserve(2 * bytes);
  for (std::size_t j = 0; j < bytes; ++j) {
    const unsigned byte = static_cast<unsigned>((f.words()[j / 8] >> (8 * (j % 8))) & 0xff);
    out += kDigits[byte >> 4];
    out += kDigits[byte & 15];
  }
  return out;
}

int infer_vars_from_hex(std::string_view text) {
  text = trim(text);
  const std::size_t bytes = text.size() / 2;
  if (text.size() % 2 || bytes == 0 || !std::has_single_bit(bytes))
    throw ParseError("hex truth table length must be a power-of-two number of bytes", text.size());
  const int m = 3 + std::countr_zero(bytes);
  if (m > kMaxVars) throw ParseError("hex truth table too long", 0);
  return m;
}

BoolFun from_hex(std::string_view text, int m) {
  text = trim(text);
  BoolFun f(m);
  const std::size_t bytes = std::max<std::size_t>(1, f.num_bits() / 8);
  if (text.size() != 2 * bytes)
    throw ParseError("expected " + std::to_string(2 * bytes) + " hex digits for m=" + std::to_string(m),
                     std::min(text.size(), 2 * bytes));
  for (std::size_t j = 0; j < bytes; ++j) {
    const int hi = hex_digit(text[2 * j]);
    const int lo = hex_digit(text[2 * j + 1]);
    if (hi < 0) throw ParseError("invalid hex digit", 2 * j);
    if (lo < 0) throw ParseError("invalid hex digit", 2 * j + 1);
    f.words()[j / 8] |= static_cast<std::uint64_t>(hi * 16 + lo) << (8 * (j % 8));
  }
  if (f.words().back() & ~f.padding_mask())
    throw ParseError("bits set beyond 2^m entries", 0);
  return f;
}

BoolFun parse_function(std::string_view text, int m, bool hex) {
  text = trim(text);
  if (text.starts_with("hex:")) {
    text.remove_prefix(4);
    hex = true;
  }
  if (hex) return from_hex(text, m);
  return anf_to_truth_table(parse_anf(text, m));
}

}  // namespace bfnorm
