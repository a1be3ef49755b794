#include "nbell/ket.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace nbell {

namespace {

class KetParser {
public:
  explicit KetParser(std::string_view text) : text_(text) {}

  std::map<std::string, Complex> parse() {
    std::map<std::string, Complex> terms;
    skip_space();
    if (at_end()) fail("empty expression");
    Real sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1.0 : 1.0;
      skip_space();
    }
    for (;;) {
      auto [coef, bits] = term();
      if (!width_) width_ = bits.size();
      if (bits.size() != *width_) {
        fail("bitstring |" + bits + "> has " + std::to_string(bits.size()) + " qubits, expected " +
             std::to_string(*width_));
      }
      terms[bits] += sign * coef;
      skip_space();
      if (at_end()) break;
      const char op = take();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-', found '") + op + "'", pos_ - 1);
      sign = op == '-' ? -1.0 : 1.0;
      skip_space();
    }
    return terms;
  }

private:
  std::pair<Complex, std::string> term() {
    Complex coef(1.0);
    if (!at_end() && peek() != '|') {
      coef = coefficient();
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
      }
    }
    expect('|');
    std::string bits;
    while (!at_end() && (peek() == '0' || peek() == '1')) bits.push_back(take());
    if (bits.empty()) fail("expected a bitstring of 0s and 1s");
    expect('>');
    return {coef, bits};
  }

  Complex coefficient() {
    if (peek() != '(') return Complex(number(), 0.0);
    ++pos_;
    skip_space();
    const Real re = number();
    skip_space();
    if (at_end() || (peek() != '+' && peek() != '-')) fail("expected '+' or '-' inside complex coefficient");
    const Real sign = take() == '-' ? -1.0 : 1.0;
    skip_space();
    const Real im = number();
    skip_space();
    expect('i');
    skip_space();
    expect(')');
    return {re, sign * im};
  }

  Real number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    bool digits = false;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) {
      digits = digits || text_[end] != '.';
      ++end;
    }
    if (!digits) fail("expected a number", start);
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '-' || text_[exp] == '+')) ++exp;
      if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
        end = exp;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      }
    }
    std::size_t first = start;
    if (text_[first] == '+') ++first;
    Real value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + first, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end || !std::isfinite(value)) fail("malformed number", start);
    pos_ = end;
    return value;
  }

  void expect(char c) {
    if (at_end()) fail(std::string("expected '") + c + "', found end of input");
    if (peek() != c) fail(std::string("expected '") + c + "', found '" + peek() + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError("ket expression: " + what, at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> width_;
};

std::string shortest(Real v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

ParsedKet parse_ket(std::string_view expression) {
  const auto terms = KetParser(expression).parse();
  const int n = static_cast<int>(terms.begin()->first.size());
  if (n > kMaxPureQubits) throw InvalidArgument("ket expression: too many qubits");
  VectorXc amps = VectorXc::Zero(static_cast<Eigen::Index>(dimension(n)));
  for (const auto& [bits, coef] : terms) {
    std::uint64_t index = 0;
    for (char c : bits) index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    amps(static_cast<Eigen::Index>(index)) = coef;
  }
  const Real norm = amps.norm();
  if (norm == 0.0) throw InvalidArgument("ket expression: amplitudes sum to the zero vector");
  ParsedKet out{PureState::normalized(std::move(amps)), norm, std::abs(norm * norm - 1.0) > kNormTolerance};
  return out;
}

std::string render_ket(const PureState& state) {
  const int n = state.n_qubits();
  std::string out;
  for (std::uint64_t index = 0; index < state.dim(); ++index) {
    const Complex a = state.amplitude(index);
    if (a == Complex(0.0)) continue;
    if (!out.empty()) out += " + ";
    out += "(" + shortest(a.real()) + (std::signbit(a.imag()) ? "-" : "+") + shortest(std::abs(a.imag())) + "i)*|";
    for (int q = 1; q <= n; ++q) out.push_back(static_cast<char>('0' + bit_of(index, q, n)));
    out += ">";
  }
  return out;
}

}  // namespace nbell
