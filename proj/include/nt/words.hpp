#pragma once

// Words in free groups and one-relator surface groups.
//
// A letter is a nonzero int: +k is generator k-1, -k its inverse. Words are
// plain vectors of letters so they can be sliced and concatenated cheaply.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nt {

using Letter = int;
using Word = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return -l; }
inline int generator_index(Letter l) { return (l > 0 ? l : -l) - 1; }

/// Total order on letters used for canonical rotations: a < A < b < B < ...
inline int letter_key(Letter l) { return 2 * generator_index(l) + (l < 0 ? 1 : 0); }

bool word_less(const Word& x, const Word& y);

Word inverse(const Word& w);
Word concat(const Word& x, const Word& y);
Word power(const Word& w, int k);

/// Free reduction (cancel x x^-1 pairs).
Word free_reduce(const Word& w);

struct CyclicReduction {
  Word core;       // cyclically reduced
  Word conjugator; // w == conjugator * core * conjugator^-1 after free reduction
};
CyclicReduction cyclic_reduce(const Word& w);

/// Least rotation under word_less (Booth's algorithm).
Word least_rotation(const Word& w);

/// Smallest root r with w == r^k for cyclic words; returns (r, k).
std::pair<Word, int> primitive_root(const Word& w);

/// Letter at cyclic position i (any integer) of a nonempty word.
inline Letter cyclic_at(const Word& w, long i) {
  const long n = static_cast<long>(w.size());
  long r = i % n;
  if (r < 0) r += n;
  return w[static_cast<std::size_t>(r)];
}

/// Generators, optional single relator, and the peripheral (cusp/boundary)
/// words of a surface group.
class GroupPresentation {
 public:
  GroupPresentation() = default;
  GroupPresentation(std::vector<std::string> names, std::optional<Word> relator);

  int rank() const { return static_cast<int>(names_.size()); }
  bool is_free() const { return !relator_.has_value(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::optional<Word>& relator() const { return relator_; }

  /// Parse e.g. "abAB", "a1b1A1B1", "a b^-1", "a^3 B". Inverses are upper
  /// case or written with ^-1. Throws Error(unknown_generator).
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  /// Reduced representative of the group element (free reduction, plus
  /// Dehn's algorithm for the one-relator closed surface case).
  Word reduce(const Word& w) const;

  /// Canonical representative of the conjugacy class of w (oriented). For
  /// closed surface groups the representative is exact up to
  /// kExactConjugacyLength letters; longer words get a deterministic
  /// shortest form that may differ between conjugate inputs.
  Word conjugacy_normal_form(const Word& w) const;
  static constexpr std::size_t kExactConjugacyLength = 24;
  /// Canonical representative of the unoriented class {w, w^-1}.
  Word unoriented_normal_form(const Word& w) const;

 private:
  Word dehn_reduce_linear(const Word& w) const;
  Word dehn_reduce_cyclic(const Word& w) const;
  Word descend_swaps(const Word& core) const;

  std::vector<std::string> names_;
  std::optional<Word> relator_;
  std::vector<Word> relator_cycles_;  // all rotations of relator and inverse
};

}  // namespace nt
