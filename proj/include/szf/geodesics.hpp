#pragma once

#include "szf/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace szf {

using Mat2 = Eigen::Matrix2d;

/** Letters encode a generator index and an inversion bit: letter = 2*index + inverted.
 * Rendered as 'a','b','c',... for generators and 'A','B','C',... for inverses. */
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return l ^ 1; }
inline int letter_index(Letter l) { return l >> 1; }
inline bool letter_inverted(Letter l) { return l & 1; }

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& text, int num_generators);

/** Cancels adjacent inverse pairs until none remain. */
Word free_reduce(Word w);
/** Free reduction plus cancellation across the wrap-around. */
Word cyclic_reduce(Word w);
/** Lexicographically least rotation; the canonical name of a cyclic word. */
Word canonical_rotation(Word w);

struct GroupPresentation {
  std::string name;
  int genus = 0;
  std::vector<Mat2> generators;  // a1, b1, a2, b2, ... (2*genus matrices)
  double det_residual = 0.0;
  double relation_residual = 0.0;

  int num_generators() const { return static_cast<int>(generators.size()); }
  int alphabet_size() const { return 2 * num_generators(); }

  /** Matrix of one letter (inverse letters use the adjugate, det = 1). */
  Mat2 letter_matrix(Letter l) const;
  /** Left-to-right product over the word. */
  Mat2 word_matrix(const Word& w) const;
  /** Trace of word_matrix with a compensated-product pass for long words. */
  double word_trace(const Word& w) const;
  /** Smallest translation length among the generators. */
  double min_generator_length() const;
};

/** Reads and validates a group file: JSON with name, genus and generator
 * matrices whose entries are decimal strings. */
GroupPresentation load_group(const std::string& path);

struct EnumeratedElement {
  Word word;
  Mat2 matrix;
};

/** All freely reduced words up to max_word_length with their matrices.
 * Intended for small cutoffs; the projected size is checked against the
 * memory budget before anything is allocated. */
std::vector<EnumeratedElement> enumerate_elements(const GroupPresentation& group,
                                                  int max_word_length,
                                                  std::size_t memory_budget_bytes = 1ull << 30);

struct NormData {
  double trace = 0.0;   // |trace|
  double norm = 0.0;    // alpha^2 with alpha the larger eigenvalue
  double length = 0.0;  // log(norm)
};

/** Trace, norm and translation length of a hyperbolic matrix. */
NormData norm_of(const Mat2& m);
NormData norm_of_trace(double trace);

struct GeodesicClass {
  std::string word;   // canonical representative (least rotation, shortest in its cluster)
  double trace = 0.0; // |trace|
  double norm = 0.0;
  double length = 0.0;
  bool primitive = true;
  int multiplicity = 1;
};

struct LengthSpectrum {
  std::string group_name;
  int max_word_length = 0;
  double min_norm = 0.0;
  std::vector<GeodesicClass> classes;  // ascending by norm, ties by word
};

struct SpectrumOptions {
  /** Retain classes up to this geodesic length; 0 means the completeness
   * radius of the cutoff. */
  double keep_length = 0.0;
  int threads = 0;  // 0: hardware concurrency
  std::size_t memory_budget_bytes = 3ull << 30;
};

/** Length below which the enumeration at this cutoff is trusted to have
 * found every class. */
double completeness_radius(const GroupPresentation& group, int max_word_length);

/** Enumerates cyclically reduced words up to the cutoff, clusters them into
 * conjugacy-class candidates by trace, and returns the sorted spectrum. */
LengthSpectrum build_spectrum(const GroupPresentation& group, int max_word_length,
                              const SpectrumOptions& opts = {});

void save_spectrum(const LengthSpectrum& spectrum, const std::string& path);
LengthSpectrum load_spectrum(const std::string& path);

}  // namespace szf
