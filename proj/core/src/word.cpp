#include "advreg/word.hpp"

#include <algorithm>
#include <unordered_set>

#include "advreg/error.hpp"

namespace advreg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kAlphabetMismatch: return "alphabet mismatch";
    case ErrorKind::kLengthMismatch: return "length mismatch";
    case ErrorKind::kBoundExceeded: return "bound exceeded";
    case ErrorKind::kSyntax: return "syntax error";
    case ErrorKind::kUnboundVariable: return "unbound variable";
    case ErrorKind::kFreeVariables: return "free variables";
    case ErrorKind::kMissingInterpretation: return "missing interpretation";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kCapExceeded: return "cap exceeded";
    case ErrorKind::kIntegrity: return "integrity error";
    case ErrorKind::kMode: return "mode error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

Alphabet::Alphabet() : Alphabet(std::vector<std::string>{"a"}) {}

Alphabet::Alphabet(std::vector<std::string> letters) {
  if (letters.empty()) throw Error(ErrorKind::kFormat, "alphabet must have at least one letter");
  std::unordered_set<std::string> seen;
  std::size_t max_token = 1;
  for (const auto& l : letters) {
    if (l.empty()) throw Error(ErrorKind::kFormat, "alphabet letters must be non-empty");
    if (!seen.insert(l).second)
      throw Error(ErrorKind::kFormat, "duplicate alphabet letter '" + l + "'");
    max_token = std::max(max_token, l.size());
  }
  data_ = std::make_shared<const Data>(Data{std::move(letters), max_token});
}

Alphabet Alphabet::of_chars(std::string_view chars) {
  std::vector<std::string> letters;
  for (char c : chars) letters.emplace_back(1, c);
  return Alphabet(std::move(letters));
}

const std::string& Alphabet::letter(Letter index) const {
  if (index >= size())
    throw Error(ErrorKind::kAlphabetMismatch, "letter index " + std::to_string(index) + " out of range");
  return data_->letters[index];
}

Letter Alphabet::index_of(std::string_view token) const {
  const auto& ls = data_->letters;
  auto it = std::find(ls.begin(), ls.end(), token);
  if (it == ls.end())
    throw Error(ErrorKind::kAlphabetMismatch, "unknown letter '" + std::string(token) + "'");
  return static_cast<Letter>(it - ls.begin());
}

bool Alphabet::contains(std::string_view token) const {
  const auto& ls = data_->letters;
  return std::find(ls.begin(), ls.end(), token) != ls.end();
}

Symbols Alphabet::parse(std::string_view text) const {
  Symbols out;
  if (text == "ε") return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    bool matched = false;
    for (std::size_t len = std::min(data_->max_token, text.size() - pos); len > 0; --len) {
      auto token = text.substr(pos, len);
      if (contains(token)) {
        out.push_back(index_of(token));
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw Error(ErrorKind::kAlphabetMismatch,
                  "cannot tokenize '" + std::string(text) + "' at offset " + std::to_string(pos));
  }
  return out;
}

std::string Alphabet::format(std::span<const Letter> symbols) const {
  std::string out;
  for (Letter l : symbols) out += letter(l);
  return out;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  return a.data_ == b.data_ || a.data_->letters == b.data_->letters;
}

Word::Word(Alphabet alphabet, Symbols symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
  for (Letter l : symbols_)
    if (l >= alphabet_.size())
      throw Error(ErrorKind::kAlphabetMismatch, "symbol index out of alphabet range");
}

Word Word::parse(const Alphabet& alphabet, std::string_view text) {
  return Word(alphabet, alphabet.parse(text));
}

std::strong_ordering lex_compare(std::span<const Letter> u, std::span<const Letter> v) {
  return std::lexicographical_compare_three_way(u.begin(), u.end(), v.begin(), v.end());
}

std::strong_ordering lex_compare(const Word& u, const Word& v) {
  if (!(u.alphabet() == v.alphabet()))
    throw Error(ErrorKind::kAlphabetMismatch, "lex_compare: words over different alphabets");
  return lex_compare(std::span<const Letter>(u.symbols()), std::span<const Letter>(v.symbols()));
}

TrackedAlphabet::TrackedAlphabet(Alphabet base, std::uint32_t tracks)
    : base_(std::move(base)), tracks_(tracks) {}

std::size_t TrackedAlphabet::size() const {
  if (tracks_ > 24)
    throw Error(ErrorKind::kCapExceeded,
                "tracked alphabet with " + std::to_string(tracks_) + " tracks is too large to enumerate");
  return base_.size() << tracks_;
}

std::size_t TrackedAlphabet::letter_index(Letter base, std::span<const std::uint8_t> bits) const {
  if (bits.size() != tracks_) throw Error(ErrorKind::kLengthMismatch, "track vector has wrong width");
  std::size_t index = base;
  for (std::uint8_t b : bits) index = (index << 1) | (b ? 1u : 0u);
  return index;
}

Letter TrackedAlphabet::base_of(std::size_t index) const {
  return static_cast<Letter>(index >> tracks_);
}

TrackBits TrackedAlphabet::bits_of(std::size_t index) const {
  TrackBits bits(tracks_);
  for (std::uint32_t j = 0; j < tracks_; ++j) bits[j] = (index >> (tracks_ - 1 - j)) & 1u;
  return bits;
}

std::string TrackedAlphabet::format_letter(std::size_t index) const {
  std::string s = base_.letter(base_of(index));
  if (tracks_ > 0) s += "/" + format_bits(bits_of(index));
  return s;
}

TrackedWord::TrackedWord(TrackedAlphabet alphabet, Symbols base, std::vector<TrackBits> tracks)
    : alphabet_(std::move(alphabet)), base_(std::move(base)), tracks_(std::move(tracks)) {
  if (tracks_.size() != alphabet_.tracks())
    throw Error(ErrorKind::kLengthMismatch, "track count does not match tracked alphabet");
  for (const auto& t : tracks_)
    if (t.size() != base_.size())
      throw Error(ErrorKind::kLengthMismatch, "track length differs from word length");
}

TrackBits TrackedWord::bits(std::size_t i) const {
  TrackBits b(tracks_.size());
  for (std::size_t j = 0; j < tracks_.size(); ++j) b[j] = tracks_[j][i];
  return b;
}

std::string TrackedWord::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += "(" + alphabet_.base().letter(base_[i]);
    for (const auto& t : tracks_) s += "," + std::to_string(t[i]);
    s += ")";
  }
  return s + "]";
}

TrackedWord attach_tracks(const Word& u, const std::vector<TrackBits>& tracks) {
  for (const auto& t : tracks)
    if (t.size() != u.size())
      throw Error(ErrorKind::kLengthMismatch,
                  "track of length " + std::to_string(t.size()) + " attached to word of length " +
                      std::to_string(u.size()));
  return TrackedWord(TrackedAlphabet(u.alphabet(), static_cast<std::uint32_t>(tracks.size())),
                     u.symbols(), tracks);
}

TrackedWord attach_tracks(const Word& u, const std::vector<std::string>& tracks) {
  std::vector<TrackBits> bits;
  for (const auto& t : tracks) bits.push_back(parse_bits(t));
  return attach_tracks(u, bits);
}

TrackBits parse_bits(std::string_view text) {
  TrackBits bits;
  if (text == "ε") return bits;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw Error(ErrorKind::kFormat, "expected a 0/1 word, got '" + std::string(text) + "'");
    bits.push_back(c == '1');
  }
  return bits;
}

std::string format_bits(std::span<const std::uint8_t> bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace advreg
