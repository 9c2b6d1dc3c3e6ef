#include "nt/words.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "nt/hyperbolic.hpp"

namespace nt {

bool word_less(const Word& x, const Word& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](Letter a, Letter b) { return letter_key(a) < letter_key(b); });
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

Word concat(const Word& x, const Word& y) {
  Word out;
  out.reserve(x.size() + y.size());
  out.insert(out.end(), x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Word power(const Word& w, int k) {
  const Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(out);
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

CyclicReduction cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicReduction out;
  out.conjugator.assign(r.begin(), r.begin() + static_cast<long>(lo));
  out.core.assign(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
  return out;
}

Word least_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  // Booth's least-rotation algorithm on the doubled word.
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  const auto at = [&](long i) { return letter_key(w[static_cast<std::size_t>(i) % n]); };
  const auto sk = [&]() { return static_cast<long>(k); };
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const int sj = at(static_cast<long>(j));
    long i = f[j - k - 1];
    while (i != -1 && sj != at(sk() + i + 1)) {
      if (sj < at(sk() + i + 1)) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (sj != at(sk() + i + 1)) {
      if (sj < at(sk())) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[(k + i) % n];
  return out;
}

std::pair<Word, int> primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return {Word(w.begin(), w.begin() + static_cast<long>(p)), static_cast<int>(n / p)};
  }
  return {w, 1};
}

GroupPresentation::GroupPresentation(std::vector<std::string> names, std::optional<Word> relator)
    : names_(std::move(names)), relator_(std::move(relator)) {
  if (relator_) {
    for (const Word& base : {*relator_, inverse(*relator_)}) {
      for (std::size_t s = 0; s < base.size(); ++s) {
        Word r(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) r[i] = base[(s + i) % base.size()];
        relator_cycles_.push_back(std::move(r));
      }
    }
  }
}

Word GroupPresentation::parse(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch)))
      throw Error(ErrorKind::unknown_generator, "unexpected character in word: " + std::string(1, ch));
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    std::string token(text.substr(i, j - i));
    const bool upper = std::isupper(static_cast<unsigned char>(token[0]));
    std::string lowered = token;
    lowered[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lowered[0])));
    const auto it = std::find(names_.begin(), names_.end(), lowered);
    if (it == names_.end()) throw Error(ErrorKind::unknown_generator, "unknown generator '" + token + "'");
    Letter l = static_cast<Letter>(it - names_.begin()) + 1;
    if (upper) l = -l;
    int exponent = 1;
    if (j < text.size() && text[j] == '^') {
      std::size_t k = j + 1;
      bool neg = false;
      if (k < text.size() && (text[k] == '-' || text[k] == '+')) neg = text[k++] == '-';
      std::size_t start = k;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      if (k == start) throw Error(ErrorKind::unknown_generator, "malformed exponent in word");
      exponent = std::stoi(std::string(text.substr(start, k - start)));
      if (neg) exponent = -exponent;
      j = k;
    }
    for (int e = 0; e < std::abs(exponent); ++e) out.push_back(exponent < 0 ? -l : l);
    i = j;
  }
  return out;
}

std::string GroupPresentation::format(const Word& w) const {
  std::string out;
  for (Letter l : w) {
    std::string name = names_.at(static_cast<std::size_t>(generator_index(l)));
    if (l < 0) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += name;
  }
  return out;
}

// Dehn's algorithm: replace any subword that is more than half of a cyclic
// relator by the inverse of the complementary part.
Word GroupPresentation::dehn_reduce_linear(const Word& w) const {
  Word cur = free_reduce(w);
  if (!relator_) return cur;
  const std::size_t len = relator_->size();
  const std::size_t half = len / 2;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t pos = 0; pos < cur.size() && !changed; ++pos) {
      for (const Word& r : relator_cycles_) {
        std::size_t k = 0;
        while (k < len && pos + k < cur.size() && cur[pos + k] == r[k]) ++k;
        if (k > half) {
          // cur[pos, pos+k) == r[0,k); r = r[0,k) r[k,len) = 1.
          Word rest(r.begin() + static_cast<long>(k), r.end());
          Word repl = inverse(rest);
          Word next(cur.begin(), cur.begin() + static_cast<long>(pos));
          next.insert(next.end(), repl.begin(), repl.end());
          next.insert(next.end(), cur.begin() + static_cast<long>(pos + k), cur.end());
          cur = free_reduce(next);
          changed = true;
          break;
        }
      }
    }
  }
  return cur;
}

Word GroupPresentation::reduce(const Word& w) const { return dehn_reduce_linear(w); }

Word GroupPresentation::dehn_reduce_cyclic(const Word& w) const {
  Word cur = cyclic_reduce(dehn_reduce_linear(w)).core;
  if (!relator_) return cur;
  const std::size_t len = relator_->size();
  const std::size_t half = len / 2;
  bool changed = true;
  while (changed && !cur.empty()) {
    changed = false;
    const std::size_t n = cur.size();
    for (std::size_t pos = 0; pos < n && !changed; ++pos) {
      for (const Word& r : relator_cycles_) {
        std::size_t k = 0;
        while (k < len && k < n && cyclic_at(cur, static_cast<long>(pos + k)) == r[k]) ++k;
        if (k > half) {
          Word rest(r.begin() + static_cast<long>(k), r.end());
          Word next = inverse(rest);
          for (std::size_t t = k; t < n; ++t) next.push_back(cyclic_at(cur, static_cast<long>(pos + t)));
          cur = cyclic_reduce(dehn_reduce_linear(next)).core;
          changed = true;
          break;
        }
      }
    }
  }
  return cur;
}

Word GroupPresentation::conjugacy_normal_form(const Word& w) const {
  Word core = dehn_reduce_cyclic(w);
  if (!relator_ || core.empty()) return least_rotation(core);
  // Length-preserving half-relator swaps connect the shortest cyclic words
  // of a conjugacy class; take the least rotation over that set.
  const std::size_t len = relator_->size();
  const std::size_t half = len / 2;
  if (core.size() > kExactConjugacyLength) return descend_swaps(core);
  std::set<Word> seen;
  std::deque<Word> queue;
  Word start = least_rotation(core);
  seen.insert(start);
  queue.push_back(start);
  Word best = start;
  constexpr std::size_t kMaxStates = 20000;
  while (!queue.empty() && seen.size() < kMaxStates) {
    Word cur = queue.front();
    queue.pop_front();
    const std::size_t n = cur.size();
    if (n < half) continue;
    for (std::size_t pos = 0; pos < n; ++pos) {
      for (const Word& r : relator_cycles_) {
        std::size_t k = 0;
        while (k < half && cyclic_at(cur, static_cast<long>(pos + k)) == r[k]) ++k;
        if (k < half) continue;
        Word next = inverse(Word(r.begin() + static_cast<long>(half), r.end()));
        for (std::size_t t = half; t < n; ++t) next.push_back(cyclic_at(cur, static_cast<long>(pos + t)));
        Word reduced = dehn_reduce_cyclic(next);
        if (reduced.size() < n) {
          // A shorter form exists; restart from it.
          return conjugacy_normal_form(reduced);
        }
        Word canon = least_rotation(reduced);
        if (seen.insert(canon).second) {
          if (word_less(canon, best)) best = canon;
          queue.push_back(std::move(canon));
        }
      }
    }
  }
  return best;
}

// Long words: apply only the swaps that make the half relator lex smaller,
// in place, until none applies or the pass budget runs out.
Word GroupPresentation::descend_swaps(const Word& core) const {
  const std::size_t half = relator_->size() / 2;
  Word cur = least_rotation(core);
  const std::size_t n = cur.size();
  for (int pass = 0; pass < 8; ++pass) {
    bool changed = false;
    for (std::size_t pos = 0; pos < n; ++pos) {
      for (const Word& r : relator_cycles_) {
        std::size_t k = 0;
        while (k < half && cyclic_at(cur, static_cast<long>(pos + k)) == r[k]) ++k;
        if (k < half) continue;
        const Word alt = inverse(Word(r.begin() + static_cast<long>(half), r.end()));
        if (!word_less(alt, Word(r.begin(), r.begin() + static_cast<long>(half)))) continue;
        Word next = cur;
        for (std::size_t t = 0; t < half; ++t) next[(pos + t) % n] = alt[t];
        Word reduced = dehn_reduce_cyclic(next);
        if (reduced.size() < n) return conjugacy_normal_form(reduced);
        cur = std::move(next);
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  return least_rotation(cur);
}

Word GroupPresentation::unoriented_normal_form(const Word& w) const {
  Word x = conjugacy_normal_form(w);
  Word y = conjugacy_normal_form(inverse(w));
  if (x.size() != y.size()) return x.size() < y.size() ? x : y;
  return word_less(y, x) ? y : x;
}

}  // namespace nt
