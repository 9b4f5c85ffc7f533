#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mouldlab/rational.hpp"

namespace mouldlab {

// A letter is an index into a named alphabet (0-based, declaration order)
// or a positive integer of the integer alphabet. The alphabet decides which.
struct Letter {
  std::uint32_t value = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Letters = std::vector<Letter>;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

class Alphabet {
 public:
  enum class Kind { named, integer };

  static AlphabetPtr named(std::vector<std::string> names) {
    if (names.empty()) throw DomainError("a named alphabet needs at least one letter");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw DomainError("empty letter name");
      for (std::size_t j = 0; j < i; ++j) {
        if (names[i] == names[j]) throw DomainError("duplicate letter name '" + names[i] + "'");
      }
    }
    return AlphabetPtr(new Alphabet(Kind::named, std::move(names)));
  }

  // The positive integers; a process-wide singleton.
  static AlphabetPtr integers() {
    static const AlphabetPtr instance(new Alphabet(Kind::integer, {}));
    return instance;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_integer() const noexcept { return kind_ == Kind::integer; }
  std::size_t size() const {
    if (is_integer()) throw DomainError("the integer alphabet is infinite");
    return names_.size();
  }
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool contains(Letter l) const noexcept {
    return is_integer() ? l.value >= 1 : l.value < names_.size();
  }

  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (std::uint32_t i = 0; i < size(); ++i) out.push_back(Letter{i});
    return out;
  }

  Letter letter(std::string_view name) const {
    if (is_integer()) return Letter{static_cast<std::uint32_t>(std::stoul(std::string(name)))};
    for (std::uint32_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return Letter{i};
    }
    throw DomainError("unknown letter '" + std::string(name) + "'");
  }

  std::string letter_name(Letter l) const {
    if (!contains(l)) throw DomainError("letter outside alphabet");
    return is_integer() ? std::to_string(l.value) : names_[l.value];
  }

  // Grade of a single letter: 1 on named alphabets, the letter itself on the integers.
  int letter_grade(Letter l) const noexcept { return is_integer() ? static_cast<int>(l.value) : 1; }

  int grade(const Letters& w) const noexcept {
    if (!is_integer()) return static_cast<int>(w.size());
    int g = 0;
    for (Letter l : w) g += static_cast<int>(l.value);
    return g;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.kind_ == b.kind_ && a.names_ == b.names_;
  }

 private:
  Alphabet(Kind kind, std::vector<std::string> names) : kind_(kind), names_(std::move(names)) {}

  Kind kind_;
  std::vector<std::string> names_;
};

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view op) {
  if (!same_alphabet(a, b)) throw AlphabetMismatch(std::string(op) + ": alphabet mismatch");
}

// {x, y} for two letters, {x1, ..., xN} otherwise.
inline AlphabetPtr omega_alphabet(int n) {
  if (n < 1) throw DomainError("alphabet size must be >= 1");
  if (n == 2) return Alphabet::named({"x", "y"});
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) names.push_back("x" + std::to_string(j));
  return Alphabet::named(std::move(names));
}

class Word {
 public:
  explicit Word(AlphabetPtr alphabet, Letters letters = {})
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    if (!alphabet_) throw DomainError("word without alphabet");
    for (Letter l : letters_) {
      if (!alphabet_->contains(l)) throw DomainError("letter " + std::to_string(l.value) + " not in alphabet");
    }
  }

  // Integer-alphabet convenience: Word::ints({1, 2, 3}).
  static Word ints(std::initializer_list<std::uint32_t> values) {
    Letters ls;
    for (auto v : values) ls.push_back(Letter{v});
    return Word(Alphabet::integers(), std::move(ls));
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const Letters& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_.at(i); }

  int weight() const {
    if (!alphabet_->is_integer()) throw DomainError("weight is defined only on integer words");
    return alphabet_->grade(letters_);
  }
  int grade() const noexcept { return alphabet_->grade(letters_); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_ && same_alphabet(a.alphabet_, b.alphabet_);
  }
  // Lexicographic on letters; letter order is declaration order or numeric order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  AlphabetPtr alphabet_;
  Letters letters_;
};

inline Word concat(const Word& a, const Word& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "concat");
  Letters out = a.letters();
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(a.alphabet(), std::move(out));
}

inline Letters reversed(Letters w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word reverse(const Word& w) { return Word(w.alphabet(), reversed(w.letters())); }

inline Letters slice(const Letters& w, std::size_t from, std::size_t to) {
  return Letters(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

inline Letters concat(const Letters& a, const Letters& b) {
  Letters out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Number of interleavings of a and b that produce n, by dynamic programming
// over (prefix of a, prefix of b).
inline std::uint64_t shuffle_coefficient(const Letters& a, const Letters& b, const Letters& n) {
  const std::size_t la = a.size(), lb = b.size();
  if (n.size() != la + lb) return 0;
  std::vector<std::uint64_t> row(lb + 1, 0), prev(lb + 1, 0);
  for (std::size_t i = 0; i <= la; ++i) {
    for (std::size_t j = 0; j <= lb; ++j) {
      if (i == 0 && j == 0) {
        row[j] = 1;
        continue;
      }
      const Letter target = n[i + j - 1];
      std::uint64_t ways = 0;
      if (i > 0 && a[i - 1] == target) ways += prev[j];
      if (j > 0 && b[j - 1] == target) ways += row[j - 1];
      row[j] = ways;
    }
    std::swap(row, prev);
  }
  return prev[lb];
}

inline std::uint64_t shuffle_coefficient(const Word& a, const Word& b, const Word& n) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "shuffle_coefficient");
  require_same_alphabet(a.alphabet(), n.alphabet(), "shuffle_coefficient");
  return shuffle_coefficient(a.letters(), b.letters(), n.letters());
}

namespace detail {

inline void shuffle_into(const Letters& a, std::size_t i, const Letters& b, std::size_t j,
                         Letters& prefix, std::map<Letters, std::uint64_t>& out) {
  if (i == a.size() || j == b.size()) {
    Letters w = prefix;
    w.insert(w.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    w.insert(w.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    ++out[std::move(w)];
    return;
  }
  prefix.push_back(a[i]);
  shuffle_into(a, i + 1, b, j, prefix, out);
  prefix.back() = b[j];
  shuffle_into(a, i, b, j + 1, prefix, out);
  prefix.pop_back();
}

}  // namespace detail

// The shuffle a ш b with multiplicities, built by first-letter recursion.
inline std::map<Letters, std::uint64_t> shuffle_product(const Letters& a, const Letters& b) {
  std::map<Letters, std::uint64_t> out;
  Letters prefix;
  prefix.reserve(a.size() + b.size());
  detail::shuffle_into(a, 0, b, 0, prefix, out);
  return out;
}

// Brute-force enumeration of the position sets occupied by a; slow but obviously right.
inline std::map<Word, std::uint64_t> shuffle_multiset(const Word& a, const Word& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "shuffle_multiset");
  const std::size_t la = a.length(), total = a.length() + b.length();
  std::vector<bool> from_a(total, false);
  std::fill(from_a.begin(), from_a.begin() + static_cast<std::ptrdiff_t>(la), true);
  std::map<Word, std::uint64_t> out;
  // prev_permutation walks every arrangement of la trues among total slots exactly once.
  do {
    Letters w;
    w.reserve(total);
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < total; ++k) w.push_back(from_a[k] ? a[ia++] : b[ib++]);
    ++out[Word(a.alphabet(), std::move(w))];
  } while (std::prev_permutation(from_a.begin(), from_a.end()));
  return out;
}

// All words of grade <= bound, ordered by (grade, lexicographic).
inline std::vector<Letters> words_up_to(const Alphabet& alphabet, int bound) {
  std::vector<std::vector<Letters>> by_grade(static_cast<std::size_t>(std::max(bound, 0)) + 1);
  if (bound < 0) return {};
  by_grade[0].push_back({});
  if (alphabet.is_integer()) {
    // Words of weight g = a letter n <= g followed by a word of weight g - n.
    for (int g = 1; g <= bound; ++g) {
      for (int n = 1; n <= g; ++n) {
        for (const Letters& tail : by_grade[static_cast<std::size_t>(g - n)]) {
          Letters w{Letter{static_cast<std::uint32_t>(n)}};
          w.insert(w.end(), tail.begin(), tail.end());
          by_grade[static_cast<std::size_t>(g)].push_back(std::move(w));
        }
      }
    }
  } else {
    const auto letters = alphabet.letters();
    for (int g = 1; g <= bound; ++g) {
      for (Letter l : letters) {
        for (const Letters& tail : by_grade[static_cast<std::size_t>(g - 1)]) {
          Letters w{l};
          w.insert(w.end(), tail.begin(), tail.end());
          by_grade[static_cast<std::size_t>(g)].push_back(std::move(w));
        }
      }
    }
  }
  std::vector<Letters> out;
  for (auto& level : by_grade) {
    std::sort(level.begin(), level.end());
    for (auto& w : level) out.push_back(std::move(w));
  }
  return out;
}

// Text form: named letters concatenated ("xxy"); integer words as "(1 2 1)".
inline std::string render_letters(const Alphabet& alphabet, const Letters& w) {
  if (alphabet.is_integer()) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(w[i].value);
    }
    return s + ")";
  }
  std::string s;
  for (Letter l : w) s += alphabet.letter_name(l);
  return s;
}

inline std::string to_string(const Word& w) { return render_letters(*w.alphabet(), w.letters()); }

inline Letters parse_letters(const Alphabet& alphabet, std::string_view text) {
  Letters out;
  if (alphabet.is_integer()) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
      throw DomainError("integer word must be parenthesised: '" + std::string(text) + "'");
    }
    std::string_view body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      while (pos < body.size() && body[pos] == ' ') ++pos;
      if (pos == body.size()) break;
      std::size_t end = pos;
      while (end < body.size() && body[end] != ' ') ++end;
      const std::string tok(body.substr(pos, end - pos));
      if (tok.find_first_not_of("0123456789") != std::string::npos) {
        throw DomainError("bad integer letter '" + tok + "'");
      }
      const unsigned long v = std::stoul(tok);
      if (v == 0) throw DomainError("integer letters are >= 1");
      out.push_back(Letter{static_cast<std::uint32_t>(v)});
      pos = end;
    }
    return out;
  }
  // Greedy longest-name match keeps multi-character names unambiguous in practice.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best_len = 0;
    std::uint32_t best = 0;
    for (std::uint32_t i = 0; i < alphabet.names().size(); ++i) {
      const std::string& name = alphabet.names()[i];
      if (name.size() > best_len && text.substr(pos, name.size()) == name) {
        best_len = name.size();
        best = i;
      }
    }
    if (best_len == 0) throw DomainError("cannot parse word '" + std::string(text) + "'");
    out.push_back(Letter{best});
    pos += best_len;
  }
  return out;
}

inline Word parse_word(const AlphabetPtr& alphabet, std::string_view text) {
  return Word(alphabet, parse_letters(*alphabet, text));
}

}  // namespace mouldlab
