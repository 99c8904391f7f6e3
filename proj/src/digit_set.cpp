#include "fracube/digit_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "fracube/error.hpp"

namespace fracube {

DigitSet DigitSet::make(int base, int dim, std::vector<Digit> digits) {
  if (base < 2) throw DomainError("base n must be at least 2, got " + std::to_string(base));
  if (dim < 1) throw DomainError("dimension d must be at least 1, got " + std::to_string(dim));
  if (digits.empty()) throw DomainError("digit set is empty");
  for (const auto& h : digits) {
    if (static_cast<int>(h.size()) != dim)
      throw DomainError("digit has " + std::to_string(h.size()) + " coordinates, expected " +
                        std::to_string(dim));
    for (int c : h)
      if (c < 0 || c >= base)
        throw DomainError("coordinate " + std::to_string(c) + " outside {0.." +
                          std::to_string(base - 1) + "}");
  }
  std::sort(digits.begin(), digits.end());
  auto dup = std::adjacent_find(digits.begin(), digits.end());
  if (dup != digits.end()) {
    std::string text;
    for (int c : *dup) text += (text.empty() ? "" : " ") + std::to_string(c);
    throw DomainError("duplicate digit (" + text + ")");
  }
  return DigitSet(base, dim, std::move(digits));
}

bool DigitSet::contains(const Digit& h) const {
  return std::binary_search(digits_.begin(), digits_.end(), h);
}

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 1;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line, number++});
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return out;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_grid_row(std::string_view s, int n) {
  s = trim_right(s);
  return static_cast<int>(s.size()) == n &&
         std::all_of(s.begin(), s.end(), [](char c) { return c == '.' || c == '#'; });
}

// Whitespace-separated tokens with their 1-based columns.
std::vector<std::pair<std::string_view, std::size_t>> tokenize(std::string_view s) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start), start + 1);
  }
  return out;
}

int parse_int(std::string_view tok, std::size_t line, std::size_t column) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line, column);
  return value;
}

}  // namespace

DigitSet parse_digitset(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t pos = 0;
  auto skip_comments = [&] {
    while (pos < lines.size() && (lines[pos].text.starts_with('#') || is_blank(lines[pos].text)))
      ++pos;
  };

  skip_comments();
  if (pos >= lines.size()) throw ParseError("missing 'fcube 1' header", 1, 1);
  if (trim_right(lines[pos].text) != "fcube 1")
    throw ParseError("expected 'fcube 1' header", lines[pos].number, 1);
  ++pos;

  skip_comments();
  if (pos >= lines.size()) throw ParseError("missing 'n=<int> d=<int>' line", lines.back().number + 1, 1);
  int n = -1, d = -1;
  {
    const auto& line = lines[pos];
    auto toks = tokenize(line.text);
    if (toks.size() != 2) throw ParseError("expected 'n=<int> d=<int>'", line.number, 1);
    for (auto [tok, col] : toks) {
      if (tok.starts_with("n="))
        n = parse_int(tok.substr(2), line.number, col + 2);
      else if (tok.starts_with("d="))
        d = parse_int(tok.substr(2), line.number, col + 2);
      else
        throw ParseError("unexpected token '" + std::string(tok) + "'", line.number, col);
    }
    if (n < 0 || d < 0) throw ParseError("expected 'n=<int> d=<int>'", line.number, 1);
    if (n < 2) throw ParseError("base n must be at least 2", line.number, toks[0].second);
    if (d < 1) throw ParseError("dimension d must be at least 1", line.number, toks[1].second);
    ++pos;
  }

  // The first body line decides between grid and coordinate-list form. A
  // '#'-prefixed line with row shape starts the grid; no comments inside it.
  while (pos < lines.size() && is_blank(lines[pos].text)) ++pos;
  while (pos < lines.size() && lines[pos].text.starts_with('#') &&
         !(d == 2 && is_grid_row(lines[pos].text, n)))
    ++pos;
  while (pos < lines.size() && is_blank(lines[pos].text)) ++pos;

  std::vector<Digit> digits;
  std::vector<std::size_t> digit_lines;
  const bool grid_form = pos < lines.size() && !lines[pos].text.starts_with("digit:");

  if (grid_form) {
    if (d != 2)
      throw ParseError("grid form is only allowed for d=2", lines[pos].number, 1);
    int row = 0;
    for (; pos < lines.size() && row < n; ++pos) {
      const auto& line = lines[pos];
      if (is_blank(line.text)) continue;
      if (!is_grid_row(line.text, n)) {
        auto bad = trim_right(line.text);
        std::size_t col = 1;
        while (col <= bad.size() && (bad[col - 1] == '.' || bad[col - 1] == '#')) ++col;
        if (col > bad.size() && bad.size() != static_cast<std::size_t>(n))
          throw ParseError("grid row has " + std::to_string(bad.size()) + " cells, expected " +
                               std::to_string(n),
                           line.number, std::min(bad.size(), static_cast<std::size_t>(n)) + 1);
        throw ParseError("grid rows use only '.' and '#'", line.number, col);
      }
      for (int x = 0; x < n; ++x) {
        if (line.text[x] == '#') {
          digits.push_back({x, n - 1 - row});
          digit_lines.push_back(line.number);
        }
      }
      ++row;
    }
    if (row < n)
      throw ParseError("grid has " + std::to_string(row) + " rows, expected " + std::to_string(n),
                       lines.empty() ? 1 : lines.back().number + 1, 1);
    for (; pos < lines.size(); ++pos) {
      const auto& line = lines[pos];
      if (is_blank(line.text) || line.text.starts_with('#')) continue;
      throw ParseError("unexpected content after grid", line.number, 1);
    }
  } else {
    for (; pos < lines.size(); ++pos) {
      const auto& line = lines[pos];
      if (is_blank(line.text) || line.text.starts_with('#')) continue;
      if (!line.text.starts_with("digit:")) throw ParseError("expected 'digit:' line", line.number, 1);
      auto toks = tokenize(line.text.substr(6));
      if (static_cast<int>(toks.size()) != d)
        throw ParseError("digit has " + std::to_string(toks.size()) + " coordinates, expected " +
                             std::to_string(d),
                         line.number, 7);
      Digit h;
      for (auto [tok, col] : toks) {
        int c = parse_int(tok, line.number, col + 6);
        if (c < 0 || c >= n)
          throw ParseError("coordinate " + std::to_string(c) + " out of range {0.." +
                               std::to_string(n - 1) + "}",
                           line.number, col + 6);
        h.push_back(c);
      }
      digits.push_back(std::move(h));
      digit_lines.push_back(line.number);
    }
  }

  if (digits.empty())
    throw ParseError("digit set is empty", lines.empty() ? 1 : lines.back().number, 1);
  // Report duplicates at the line of the second occurrence.
  for (std::size_t i = 0; i < digits.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (digits[i] == digits[j]) throw ParseError("duplicate digit", digit_lines[i], 1);
  return DigitSet::make(n, d, std::move(digits));
}

std::string serialize(const DigitSet& d) {
  std::ostringstream out;
  out << "fcube 1\n" << "n=" << d.base() << " d=" << d.dim() << "\n";
  for (const auto& h : d.digits()) {
    out << "digit:";
    for (int c : h) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

std::uint64_t checked_pow(std::uint64_t base, int exponent, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (r > limit / base)
      throw DomainError(std::to_string(base) + "^" + std::to_string(exponent) +
                        " exceeds the integer limit " + std::to_string(limit));
    r *= base;
  }
  return r;
}

DigitSet compose_level(const DigitSet& d, int k) {
  if (k < 1) throw DomainError("level k must be positive");
  const auto n = static_cast<std::uint64_t>(d.base());
  const auto base_k = checked_pow(n, k, static_cast<std::uint64_t>(std::numeric_limits<int>::max()));

  // Positional expansion: h_1 + n h_2 + ... + n^{k-1} h_k.
  std::vector<Digit> current = d.digits();
  int scale = 1;
  for (int level = 1; level < k; ++level) {
    scale *= d.base();
    std::vector<Digit> next;
    next.reserve(current.size() * d.size());
    for (const auto& low : current)
      for (const auto& high : d.digits()) {
        Digit h(low);
        for (int a = 0; a < d.dim(); ++a) h[a] += scale * high[a];
        next.push_back(std::move(h));
      }
    current = std::move(next);
  }
  return DigitSet::make(static_cast<int>(base_k), d.dim(), std::move(current));
}

Dimension hausdorff_dimension(const DigitSet& d) {
  const auto count = static_cast<std::uint64_t>(d.size());
  const auto base = static_cast<std::uint64_t>(d.base());
  return {count, base, std::log(static_cast<double>(count)) / std::log(static_cast<double>(base))};
}

}  // namespace fracube
