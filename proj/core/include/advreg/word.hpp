#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advreg {

using Letter = std::uint32_t;
using Symbols = std::vector<Letter>;

/// Finite alphabet with a declared total order: letter i precedes letter j iff
/// i < j. Copies share the underlying letter table.
class Alphabet {
 public:
  Alphabet();  // the one-letter alphabet {a}
  explicit Alphabet(std::vector<std::string> letters);

  /// Splits a compact spelling such as "abc" into one-character letters.
  static Alphabet of_chars(std::string_view chars);

  std::size_t size() const { return data_->letters.size(); }
  const std::string& letter(Letter index) const;
  const std::vector<std::string>& letters() const { return data_->letters; }
  Letter index_of(std::string_view token) const;
  bool contains(std::string_view token) const;

  /// Tokenizes `text` greedily (longest letter token first). "ε" and the
  /// empty string denote the empty word.
  Symbols parse(std::string_view text) const;
  std::string format(std::span<const Letter> symbols) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  struct Data {
    std::vector<std::string> letters;
    std::size_t max_token = 1;
  };
  std::shared_ptr<const Data> data_;
};

class Word {
 public:
  Word() = default;
  Word(Alphabet alphabet, Symbols symbols);
  static Word parse(const Alphabet& alphabet, std::string_view text);

  const Alphabet& alphabet() const { return alphabet_; }
  const Symbols& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Letter operator[](std::size_t i) const { return symbols_[i]; }
  std::string str() const { return alphabet_.format(symbols_); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
  }

 private:
  Alphabet alphabet_;
  Symbols symbols_;
};

/// Lexicographic order induced by the alphabet order; a proper prefix
/// precedes its extensions.
std::strong_ordering lex_compare(const Word& u, const Word& v);
std::strong_ordering lex_compare(std::span<const Letter> u,
                                 std::span<const Letter> v);

/// Track bits are stored one byte per bit so they can be handed around as
/// spans; index j is track j.
using TrackBits = std::vector<std::uint8_t>;

/// base × {0,1}^tracks. Letter indices enumerate the product in its total
/// order: base letter first, then the track vector read as an unsigned
/// number with track 0 as the most significant bit.
class TrackedAlphabet {
 public:
  TrackedAlphabet() = default;
  TrackedAlphabet(Alphabet base, std::uint32_t tracks);

  const Alphabet& base() const { return base_; }
  std::uint32_t tracks() const { return tracks_; }
  /// |base| * 2^tracks; throws when the product does not fit an explicit
  /// enumeration (tracks > 24).
  std::size_t size() const;
  std::size_t letter_index(Letter base, std::span<const std::uint8_t> bits) const;
  Letter base_of(std::size_t index) const;
  TrackBits bits_of(std::size_t index) const;
  std::string format_letter(std::size_t index) const;

  friend bool operator==(const TrackedAlphabet& a, const TrackedAlphabet& b) {
    return a.tracks_ == b.tracks_ && a.base_ == b.base_;
  }

 private:
  Alphabet base_;
  std::uint32_t tracks_ = 0;
};

/// A word over a tracked alphabet, stored as its base projection plus one
/// 0/1 word per track.
class TrackedWord {
 public:
  TrackedWord() = default;
  TrackedWord(TrackedAlphabet alphabet, Symbols base,
              std::vector<TrackBits> tracks);

  const TrackedAlphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return base_.size(); }
  const Symbols& base_symbols() const { return base_; }
  const std::vector<TrackBits>& tracks() const { return tracks_; }
  Letter base(std::size_t i) const { return base_[i]; }
  TrackBits bits(std::size_t i) const;
  Word project() const { return Word(alphabet_.base(), base_); }
  std::string str() const;

  friend bool operator==(const TrackedWord&, const TrackedWord&) = default;

 private:
  TrackedAlphabet alphabet_;
  Symbols base_;
  std::vector<TrackBits> tracks_;
};

TrackedWord attach_tracks(const Word& u, const std::vector<TrackBits>& tracks);
/// Convenience overload taking tracks spelled as "0101" strings.
TrackedWord attach_tracks(const Word& u, const std::vector<std::string>& tracks);

TrackBits parse_bits(std::string_view text);
std::string format_bits(std::span<const std::uint8_t> bits);

/// Visits every word of exactly `length` letters over {0..alphabet_size-1} in
/// lexicographic order.
template <class Fn>
void for_each_word(std::size_t alphabet_size, std::size_t length, Fn&& fn) {
  Symbols word(length, 0);
  while (true) {
    fn(std::span<const Letter>(word));
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++word[i] < alphabet_size) break;
      word[i] = 0;
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

/// Visits every word of length 0..max_length, shortest first.
template <class Fn>
void for_each_word_up_to(std::size_t alphabet_size, std::size_t max_length,
                         Fn&& fn) {
  for (std::size_t n = 0; n <= max_length; ++n) for_each_word(alphabet_size, n, fn);
}

}  // namespace advreg
