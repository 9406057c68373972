#include "szf/geodesics.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace szf {

namespace {

// ---------------------------------------------------------------------------
// Plain 2x2 arithmetic for the hot enumeration path.

struct M4 {
  double a, b, c, d;  // [[a, b], [c, d]]
};

inline M4 m4_of(const Mat2& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

inline M4 m4_mul(const M4& x, const M4& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// ---------------------------------------------------------------------------
// Compensated products.  Words longer than a dozen letters accumulate enough
// rounding in the plain chain to threaten the 1e-9 trace clustering, so traces
// of long words are recomputed with double-double entries.

struct DD {
  double hi, lo;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD x, DD y) {
  DD s = two_sum(x.hi, y.hi);
  double lo = s.lo + x.lo + y.lo;
  double hi = s.hi + lo;
  return {hi, lo - (hi - s.hi)};
}

inline DD dd_mul_d(DD x, double y) {
  DD p = two_prod(x.hi, y);
  p.lo += x.lo * y;
  double hi = p.hi + p.lo;
  return {hi, p.lo - (hi - p.hi)};
}

struct DDMat {
  DD a, b, c, d;
};

inline DDMat dd_of(const M4& m) {
  return {{m.a, 0.0}, {m.b, 0.0}, {m.c, 0.0}, {m.d, 0.0}};
}

inline DDMat dd_mul(const DDMat& x, const M4& y) {
  return {dd_add(dd_mul_d(x.a, y.a), dd_mul_d(x.b, y.c)),
          dd_add(dd_mul_d(x.a, y.b), dd_mul_d(x.b, y.d)),
          dd_add(dd_mul_d(x.c, y.a), dd_mul_d(x.d, y.c)),
          dd_add(dd_mul_d(x.c, y.b), dd_mul_d(x.d, y.d))};
}

// Words beyond this length get the compensated pass.  Intermediate entries of
// a product conjugate to a short element grow like e^(letters * systole / 2)
// before cancelling, so plain doubles lose the 1e-9 clustering tolerance well
// before the dozen-letter mark.
constexpr int kPlainProductLimit = 4;

// ---------------------------------------------------------------------------
// Packed cyclic-word keys.  Top 6 bits: length; below, letters left-aligned so
// that numeric order on equal-length keys is lexicographic order on letters.

struct Packer {
  int bits = 3;
  int max_len = 19;

  explicit Packer(int alphabet) {
    bits = 1;
    while ((1 << bits) < alphabet) ++bits;
    max_len = 58 / bits;
  }

  std::uint64_t pack(const Letter* w, int n) const {
    std::uint64_t k = static_cast<std::uint64_t>(n) << 58;
    for (int i = 0; i < n; ++i)
      k |= static_cast<std::uint64_t>(w[i]) << (58 - bits * (i + 1));
    return k;
  }

  int length_of(std::uint64_t key) const { return static_cast<int>(key >> 58); }

  void unpack(std::uint64_t key, Word& out) const {
    int n = length_of(key);
    out.resize(n);
    std::uint64_t mask = (1u << bits) - 1;
    for (int i = 0; i < n; ++i)
      out[i] = static_cast<Letter>((key >> (58 - bits * (i + 1))) & mask);
  }
};

// True iff no rotation of w is lexicographically smaller than w itself.
bool is_least_rotation(const Letter* w, int n) {
  for (int j = 1; j < n; ++j) {
    if (w[j] != w[0]) continue;
    for (int k = 1; k < n; ++k) {
      Letter x = w[(j + k) % n];
      Letter y = w[k];
      if (x < y) return false;
      if (x > y) break;
    }
  }
  return true;
}

double parse_decimal_entry(const nlohmann::json& cell, const std::string& where) {
  if (!cell.is_string())
    throw ParseError("group file: matrix entry is not a decimal string at " + where);
  const std::string& text = cell.get_ref<const std::string&>();
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("group file: unparsable decimal string \"" + text + "\" at " + where);
  }
}

std::string format_g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Words.

std::string word_to_string(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    int idx = letter_index(l);
    if (idx >= 26) throw ParseError("word rendering supports at most 26 generators");
    out.push_back(static_cast<char>((letter_inverted(l) ? 'A' : 'a') + idx));
  }
  return out;
}

Word word_from_string(const std::string& text, int num_generators) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    int idx;
    bool inv;
    if (c >= 'a' && c <= 'z') {
      idx = c - 'a';
      inv = false;
    } else if (c >= 'A' && c <= 'Z') {
      idx = c - 'A';
      inv = true;
    } else {
      throw ParseError(std::string("invalid letter '") + c + "' in word \"" + text + "\"");
    }
    if (idx >= num_generators)
      throw ParseError(std::string("letter '") + c + "' exceeds the generator count");
    w.push_back(static_cast<Letter>(2 * idx + (inv ? 1 : 0)));
  }
  return w;
}

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == inverse_letter(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(Word w) {
  w = free_reduce(std::move(w));
  while (w.size() >= 2 && w.front() == inverse_letter(w.back())) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

Word canonical_rotation(Word w) {
  if (w.size() < 2) return w;
  const int n = static_cast<int>(w.size());
  int best = 0;
  for (int j = 1; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Letter x = w[(j + k) % n];
      Letter y = w[(best + k) % n];
      if (x != y) {
        if (x < y) best = j;
        break;
      }
    }
  }
  Word out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) out.push_back(w[(best + k) % n]);
  return out;
}

// ---------------------------------------------------------------------------
// GroupPresentation.

Mat2 GroupPresentation::letter_matrix(Letter l) const {
  const Mat2& g = generators.at(letter_index(l));
  if (!letter_inverted(l)) return g;
  Mat2 inv;  // adjugate; generators have unit determinant
  inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return inv;
}

Mat2 GroupPresentation::word_matrix(const Word& w) const {
  Mat2 m = Mat2::Identity();
  for (Letter l : w) m = m * letter_matrix(l);
  return m;
}

double GroupPresentation::word_trace(const Word& w) const {
  if (static_cast<int>(w.size()) <= kPlainProductLimit) {
    Mat2 m = word_matrix(w);
    return m(0, 0) + m(1, 1);
  }
  DDMat acc = dd_of(m4_of(letter_matrix(w[0])));
  for (std::size_t i = 1; i < w.size(); ++i)
    acc = dd_mul(acc, m4_of(letter_matrix(w[i])));
  DD tr = dd_add(acc.a, acc.d);
  return tr.hi + tr.lo;
}

double GroupPresentation::min_generator_length() const {
  double best = 0.0;
  for (int i = 0; i < num_generators(); ++i) {
    NormData nd = norm_of(generators[i]);
    if (best == 0.0 || nd.length < best) best = nd.length;
  }
  return best;
}

GroupPresentation load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("group file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("name") || !j.contains("genus") || !j.contains("generators"))
    throw ParseError("group file must contain name, genus and generators");

  GroupPresentation g;
  g.name = j.at("name").get<std::string>();
  if (!j.at("genus").is_number_integer())
    throw ParseError("group file: genus must be an integer");
  g.genus = j.at("genus").get<int>();
  if (g.genus < 2) throw ParseError("group file: genus below 2 is not a hyperbolic surface group");
  if (g.genus > 13) throw ParseError("group file: genus above 13 exceeds the word alphabet");

  const auto& gens = j.at("generators");
  if (!gens.is_array() || static_cast<int>(gens.size()) != 2 * g.genus)
    throw ParseError("group file: expected exactly 2*genus generator matrices");

  double max_det_residual = 0.0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& rows = gens[k];
    if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || rows[0].size() != 2 ||
        !rows[1].is_array() || rows[1].size() != 2)
      throw ParseError("group file: generator " + std::to_string(k) + " is not a 2x2 matrix");
    Mat2 m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        m(r, c) = parse_decimal_entry(rows[r][c], "generator " + std::to_string(k));
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    max_det_residual = std::max(max_det_residual, std::abs(det - 1.0));
    g.generators.push_back(m);
  }
  g.det_residual = max_det_residual;
  if (g.det_residual >= tol::group_residual)
    throw ParseError("group file: determinant residual " + format_g15(g.det_residual) +
                     " exceeds 1e-9");

  // Surface relation: the product of commutators must be +-identity.
  Mat2 rel = Mat2::Identity();
  for (int i = 0; i < g.genus; ++i) {
    const Mat2& a = g.generators[2 * i];
    const Mat2& b = g.generators[2 * i + 1];
    Mat2 ainv, binv;
    ainv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
    binv << b(1, 1), -b(0, 1), -b(1, 0), b(0, 0);
    rel = rel * a * b * ainv * binv;
  }
  double plus = (rel - Mat2::Identity()).cwiseAbs().maxCoeff();
  double minus = (rel + Mat2::Identity()).cwiseAbs().maxCoeff();
  g.relation_residual = std::min(plus, minus);
  if (g.relation_residual >= tol::group_residual)
    throw ParseError("group file: surface relation residual " + format_g15(g.relation_residual) +
                     " exceeds 1e-9");
  return g;
}

// ---------------------------------------------------------------------------
// norm_of.

NormData norm_of_trace(double trace) {
  double at = std::abs(trace);
  if (at <= 2.0 + tol::hyperbolic)
    throw DomainError("non-hyperbolic element: |trace| = " + format_g15(at) +
                      " is not above 2 + 1e-9");
  double alpha = (at + std::sqrt(at * at - 4.0)) / 2.0;
  NormData nd;
  nd.trace = at;
  nd.norm = alpha * alpha;
  nd.length = 2.0 * std::log(alpha);
  return nd;
}

NormData norm_of(const Mat2& m) { return norm_of_trace(m(0, 0) + m(1, 1)); }

// ---------------------------------------------------------------------------
// enumerate_elements.

std::vector<EnumeratedElement> enumerate_elements(const GroupPresentation& group,
                                                  int max_word_length,
                                                  std::size_t memory_budget_bytes) {
  if (max_word_length < 1) throw ConfigError("enumerate_elements: max_word_length must be >= 1");
  const int A = group.alphabet_size();

  double projected = 0.0;
  double level = A;
  for (int n = 1; n <= max_word_length; ++n) {
    projected += level * (sizeof(EnumeratedElement) + n + 16.0);
    level *= (A - 1);
  }
  if (projected > static_cast<double>(memory_budget_bytes))
    throw ResourceError("enumerate_elements: projected " + format_g15(projected) +
                        " bytes for cutoff " + std::to_string(max_word_length) +
                        " exceeds the memory budget of " + std::to_string(memory_budget_bytes) +
                        " bytes");

  std::vector<M4> letters(A);
  for (Letter l = 0; l < A; ++l) letters[l] = m4_of(group.letter_matrix(l));

  std::vector<EnumeratedElement> out;
  Word word;
  std::vector<M4> stack(max_word_length + 1);
  stack[0] = {1.0, 0.0, 0.0, 1.0};

  // Depth-first over freely reduced words, letters ascending at every depth.
  std::function<void()> descend = [&]() {
    int depth = static_cast<int>(word.size());
    if (depth > 0) {
      const M4& m = stack[depth];
      EnumeratedElement e;
      e.word = word;
      e.matrix << m.a, m.b, m.c, m.d;
      out.push_back(std::move(e));
    }
    if (depth == max_word_length) return;
    for (Letter l = 0; l < A; ++l) {
      if (depth > 0 && l == inverse_letter(word.back())) continue;
      word.push_back(l);
      stack[depth + 1] = m4_mul(stack[depth], letters[l]);
      descend();
      word.pop_back();
    }
  };
  descend();
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum construction.

double completeness_radius(const GroupPresentation& group, int max_word_length) {
  return max_word_length * group.min_generator_length() * 0.5;
}

namespace {

struct DfsShared {
  const std::vector<M4>* letters;
  int alphabet;
  int max_len;
  double trace_cap;
  Packer packer;
  explicit DfsShared(int a) : packer(a) {}
};

// One unit of work: all words with the given two-letter prefix.
struct DfsJob {
  Letter first, second;
};

void dfs_collect(const DfsShared& sh, DfsJob job, std::vector<std::uint64_t>& out) {
  const int L = sh.max_len;
  Letter word[64];
  M4 stack[65];
  int child[65];

  word[0] = job.first;
  word[1] = job.second;
  stack[0] = {1.0, 0.0, 0.0, 1.0};
  stack[1] = m4_mul(stack[0], (*sh.letters)[job.first]);
  stack[2] = m4_mul(stack[1], (*sh.letters)[job.second]);

  const Letter fmin = job.first;  // no letter below the first one (rotation pruning)

  int depth = 2;
  child[depth] = fmin;
  auto consider = [&](int n) {
    const M4& m = stack[n];
    double tr = m.a + m.d;
    double at = std::abs(tr);
    if (at > sh.trace_cap || at <= 2.0 + tol::hyperbolic) return;
    if (word[n - 1] == inverse_letter(word[0])) return;  // not cyclically reduced
    if (!is_least_rotation(word, n)) return;
    out.push_back(sh.packer.pack(word, n));
  };
  consider(2);

  while (depth >= 2) {
    if (depth == L) {
      --depth;
      continue;
    }
    Letter l = static_cast<Letter>(child[depth]);
    bool descended = false;
    for (; l < sh.alphabet; ++l) {
      if (l == inverse_letter(word[depth - 1])) continue;
      child[depth] = l + 1;
      word[depth] = l;
      stack[depth + 1] = m4_mul(stack[depth], (*sh.letters)[l]);
      ++depth;
      consider(depth);
      child[depth] = fmin;
      descended = true;
      break;
    }
    if (!descended) --depth;
  }
}

}  // namespace

LengthSpectrum build_spectrum(const GroupPresentation& group, int max_word_length,
                              const SpectrumOptions& opts) {
  if (max_word_length < 1)
    throw DomainError("empty spectrum: cutoff " + std::to_string(max_word_length) +
                      " enumerates no words");
  const int A = group.alphabet_size();
  Packer packer(A);
  if (max_word_length > packer.max_len)
    throw ResourceError("build_spectrum: cutoff " + std::to_string(max_word_length) +
                        " exceeds the packed-word limit of " + std::to_string(packer.max_len) +
                        " letters for this alphabet");

  const double lmin = group.min_generator_length();
  const double keep_length =
      opts.keep_length > 0.0 ? opts.keep_length : completeness_radius(group, max_word_length);
  if (keep_length <= 0.0) throw ConfigError("build_spectrum: keep_length must be positive");
  // The word filter runs on plain-double traces and a power of the shortest
  // generator can land exactly on 2*cosh(keep_length/2); the relative slack
  // keeps such boundary clusters complete.  Class retention below re-decides
  // with compensated traces.
  const double trace_cap = 2.0 * std::cosh(keep_length / 2.0) * (1.0 + 1e-6);

  // Candidate storage estimate: lattice-point growth e^L plus slack for the
  // word-level degeneracy of arithmetic groups.
  double projected = std::exp(keep_length) * 24.0;
  if (projected > static_cast<double>(opts.memory_budget_bytes))
    throw ResourceError("build_spectrum: projected candidate storage " + format_g15(projected) +
                        " bytes exceeds the memory budget; lower keep_length or the cutoff");

  std::vector<M4> letters(A);
  for (Letter l = 0; l < A; ++l) letters[l] = m4_of(group.letter_matrix(l));

  DfsShared sh(A);
  sh.letters = &letters;
  sh.alphabet = A;
  sh.max_len = max_word_length;
  sh.trace_cap = trace_cap;

  // Single-letter words.
  std::vector<std::uint64_t> keys;
  for (Letter l = 0; l < A; ++l) {
    Letter w[1] = {l};
    double tr = letters[l].a + letters[l].d;
    if (std::abs(tr) <= trace_cap && std::abs(tr) > 2.0 + tol::hyperbolic)
      keys.push_back(sh.packer.pack(w, 1));
  }

  std::vector<DfsJob> jobs;
  if (max_word_length >= 2)
    for (int f = 0; f < A; ++f)
      for (int s = f; s < A; ++s) {
        if (s == (f ^ 1)) continue;  // adjacent inverse pair
        jobs.push_back({static_cast<Letter>(f), static_cast<Letter>(s)});
      }

  unsigned int hw = std::thread::hardware_concurrency();
  int nthreads = opts.threads > 0 ? opts.threads : (hw ? static_cast<int>(hw) : 1);
  nthreads = std::min<int>(nthreads, std::max<std::size_t>(jobs.size(), 1));

  std::vector<std::vector<std::uint64_t>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      dfs_collect(sh, jobs[i], results[i]);
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& r : results) {
    keys.insert(keys.end(), r.begin(), r.end());
    r.clear();
    r.shrink_to_fit();
  }
  results.clear();

  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  if (keys.empty())
    throw DomainError("empty spectrum: no hyperbolic class found below the length cutoff");

  // Recompute traces of the distinct cyclic words, then cluster by trace.
  struct Cand {
    double abstr;
    std::uint64_t key;
  };
  std::vector<Cand> cands(keys.size());
  {
    Word w;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      sh.packer.unpack(keys[i], w);
      cands[i] = {std::abs(group.word_trace(w)), keys[i]};
    }
  }
  keys.clear();
  keys.shrink_to_fit();
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.abstr != y.abstr) return x.abstr < y.abstr;
    return x.key < y.key;
  });

  LengthSpectrum spectrum;
  spectrum.group_name = group.name;
  spectrum.max_word_length = max_word_length;

  Word w;
  std::size_t i = 0;
  while (i < cands.size()) {
    std::size_t jend = i + 1;
    while (jend < cands.size() && cands[jend].abstr - cands[jend - 1].abstr <= tol::trace_cluster)
      ++jend;

    // Packed keys order by (length, letters), so the smallest key in the
    // cluster is the shortest, lexicographically least representative.
    std::uint64_t rep_key = cands[i].key;
    for (std::size_t k = i + 1; k < jend; ++k) rep_key = std::min(rep_key, cands[k].key);
    int rep_len = sh.packer.length_of(rep_key);
    int mult = 0;
    for (std::size_t k = i; k < jend; ++k)
      if (sh.packer.length_of(cands[k].key) == rep_len) ++mult;

    sh.packer.unpack(rep_key, w);
    NormData nd = norm_of_trace(group.word_trace(w));
    if (nd.length <= keep_length + 1e-12) {
      GeodesicClass cls;
      cls.word = word_to_string(w);
      cls.trace = nd.trace;
      cls.norm = nd.norm;
      cls.length = nd.length;
      cls.multiplicity = mult;
      // Periodicity of the representative word.
      cls.primitive = true;
      int n = static_cast<int>(w.size());
      for (int p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (int q = p; q < n && periodic; ++q) periodic = (w[q] == w[q - p]);
        if (periodic) {
          cls.primitive = false;
          break;
        }
      }
      spectrum.classes.push_back(std::move(cls));
    }
    i = jend;
  }

  if (spectrum.classes.empty())
    throw DomainError("empty spectrum: no class below the retained length");

  std::sort(spectrum.classes.begin(), spectrum.classes.end(),
            [](const GeodesicClass& x, const GeodesicClass& y) {
              if (x.norm != y.norm) return x.norm < y.norm;
              return x.word < y.word;
            });
  spectrum.min_norm = spectrum.classes.front().norm;

  // A class whose length matches an integer multiple of a shorter length is a
  // power of that class up to the clustering tolerance.
  std::vector<double> lengths(spectrum.classes.size());
  for (std::size_t k = 0; k < spectrum.classes.size(); ++k)
    lengths[k] = spectrum.classes[k].length;
  const double l0 = lengths.front();
  for (auto& cls : spectrum.classes) {
    if (!cls.primitive) continue;
    for (int kpow = 2; cls.length / kpow >= l0 - tol::trace_cluster; ++kpow) {
      double target = cls.length / kpow;
      auto it = std::lower_bound(lengths.begin(), lengths.end(), target - 1e-9);
      if (it != lengths.end() && std::abs(*it - target) <= 1e-9) {
        cls.primitive = false;
        break;
      }
    }
  }
  return spectrum;
}

// ---------------------------------------------------------------------------
// Spectrum files.

void save_spectrum(const LengthSpectrum& spectrum, const std::string& path) {
  std::ostream* out = nullptr;
  std::ofstream file;
  if (path == "-") {
    out = &std::cout;
  } else {
    file.open(path);
    if (!file) throw ParseError("cannot open spectrum file for writing: " + path);
    out = &file;
  }
  *out << "# group=" << spectrum.group_name << " max_word_length=" << spectrum.max_word_length
       << "\n";
  *out << "word,trace,norm,length,primitive,multiplicity\n";
  for (const auto& c : spectrum.classes) {
    *out << c.word << ',' << format_g15(c.trace) << ',' << format_g15(c.norm) << ','
         << format_g15(c.length) << ',' << (c.primitive ? 1 : 0) << ',' << c.multiplicity << "\n";
  }
  out->flush();
  if (out->fail()) throw ParseError("I/O failure while writing spectrum: " + path);
}

LengthSpectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spectrum file: " + path);

  LengthSpectrum spectrum;
  std::string line;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string tokenstr;
      while (meta >> tokenstr) {
        auto eq = tokenstr.find('=');
        if (eq == std::string::npos) continue;
        std::string k = tokenstr.substr(0, eq), v = tokenstr.substr(eq + 1);
        if (k == "group") spectrum.group_name = v;
        if (k == "max_word_length") spectrum.max_word_length = std::atoi(v.c_str());
      }
      continue;
    }
    if (!header_seen) {
      if (line != "word,trace,norm,length,primitive,multiplicity")
        throw ParseError("spectrum file: unexpected header \"" + line + "\"");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      cols.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (cols.size() != 6)
      throw ParseError("spectrum file: row " + std::to_string(lineno) + " has " +
                       std::to_string(cols.size()) + " columns, expected 6");
    auto num = [&](const std::string& text, const char* what) {
      char* end = nullptr;
      double v = std::strtod(text.c_str(), &end);
      if (end == text.c_str() || *end != '\0')
        throw ParseError("spectrum file: bad " + std::string(what) + " \"" + text + "\" in row " +
                         std::to_string(lineno));
      return v;
    };
    GeodesicClass c;
    c.word = cols[0];
    for (char ch : c.word)
      if (!std::isalpha(static_cast<unsigned char>(ch)))
        throw ParseError("spectrum file: bad word \"" + c.word + "\" in row " +
                         std::to_string(lineno));
    c.trace = num(cols[1], "trace");
    c.norm = num(cols[2], "norm");
    c.length = num(cols[3], "length");
    if (cols[4] != "0" && cols[4] != "1")
      throw ParseError("spectrum file: primitive flag must be 0 or 1 in row " +
                       std::to_string(lineno));
    c.primitive = cols[4] == "1";
    c.multiplicity = static_cast<int>(num(cols[5], "multiplicity"));
    if (c.norm <= 1.0)
      throw ParseError("spectrum file: norm " + format_g15(c.norm) + " in row " +
                       std::to_string(lineno) + " violates norm > 1");
    if (c.multiplicity < 1)
      throw ParseError("spectrum file: multiplicity below 1 in row " + std::to_string(lineno));
    spectrum.classes.push_back(std::move(c));
  }
  if (!header_seen) throw ParseError("spectrum file: missing header row");

  auto less = [](const GeodesicClass& x, const GeodesicClass& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return x.word < y.word;
  };
  if (!std::is_sorted(spectrum.classes.begin(), spectrum.classes.end(), less)) {
    std::cerr << "load_spectrum: rows were not sorted by norm; re-sorting\n";
    std::sort(spectrum.classes.begin(), spectrum.classes.end(), less);
  }
  if (!spectrum.classes.empty()) spectrum.min_norm = spectrum.classes.front().norm;
  return spectrum;
}

}  // namespace szf
