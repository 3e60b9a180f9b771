#include "skl/enumeration.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "skl/errors.hpp"
#include "skl/parallel.hpp"

namespace skl::enumeration {

namespace {

using arithmetic::IntMatrix;

struct VecHash {
  std::size_t operator()(const std::vector<long long>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (long long x : v) {
      auto u = static_cast<unsigned long long>(x);
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
    return h;
  }
};

std::vector<long long> key_of(const SymplecticInt& m) { return m.full().data(); }

bool is_center(const SymplecticInt& m) { return m.canonical_sign().is_identity(); }

}  // namespace

std::vector<SymplecticInt> standard_generators(int g) {
  if (g < 1) throw ParameterError("genus must be positive");
  std::vector<SymplecticInt> gens;
  const SymplecticInt j = SymplecticInt::involution(g);
  gens.push_back(j);
  gens.push_back(j.inverse());
  auto push_translation = [&](const IntMatrix& s) {
    const SymplecticInt t = SymplecticInt::translation(s);
    gens.push_back(t);
    gens.push_back(t.inverse());
  };
  for (int i = 0; i < g; ++i) {
    IntMatrix s(g, g);
    s(i, i) = 1;
    push_translation(s);
  }
  for (int i = 0; i < g; ++i)
    for (int k = i + 1; k < g; ++k) {
      IntMatrix s(g, g);
      s(i, k) = 1;
      s(k, i) = 1;
      push_translation(s);
    }
  return gens;
}

GroupCache bfs_enumerate(int g, const std::vector<SymplecticInt>& generators, int word_length,
                         std::size_t element_cap, const std::string& desc) {
  if (g < 1) throw ParameterError("genus must be positive");
  if (word_length < 0) throw ParameterError("word length must be nonnegative");
  if (element_cap < 1) throw ParameterError("element cap must be positive");
  for (const auto& m : generators)
    if (m.g() != g) throw DimensionError("generator size does not match the requested genus");

  GroupCache cache;
  cache.g = g;
  cache.word_length = word_length;
  cache.generator_desc = desc;

  std::unordered_map<std::vector<long long>, std::size_t, VecHash> seen;
  cache.elements.push_back(SymplecticInt::identity(g));
  seen.emplace(key_of(cache.elements[0]), 0);

  std::size_t level_begin = 0;
  for (int level = 1; level <= word_length && !cache.truncated; ++level) {
    const std::size_t level_end = cache.elements.size();
    for (std::size_t i = level_begin; i < level_end && !cache.truncated; ++i) {
      for (const auto& gen : generators) {
        SymplecticInt prod = cache.elements[i] * gen;
        auto key = key_of(prod);
        if (seen.contains(key)) continue;
        if (cache.elements.size() >= element_cap) {
          cache.truncated = true;
          break;
        }
        seen.emplace(std::move(key), cache.elements.size());
        cache.elements.push_back(std::move(prod));
      }
    }
    level_begin = level_end;
    if (level_begin == cache.elements.size()) break;  // closure reached early
  }
  return cache;
}

GroupCache standard_cache(int g, int word_length, std::size_t element_cap) {
  return bfs_enumerate(g, standard_generators(g), word_length, element_cap, "std");
}

std::optional<int> boundary_stratum(const SymplecticInt& m) {
  const int g = m.g();
  const IntMatrix zero(g, g);
  if (!(m.c() == zero)) return std::nullopt;
  for (int j = 0; j < g; ++j) {
    // A must be identity with a free lower-left (g-j) x j block.
    bool pattern = true;
    for (int r = 0; r < g && pattern; ++r)
      for (int c = 0; c < g; ++c) {
        const long long v = m.a()(r, c);
        const bool free_slot = r >= j && c < j;
        if (free_slot) continue;
        if (v != (r == c ? 1 : 0)) {
          pattern = false;
          break;
        }
      }
    if (!pattern) continue;
    // S = A^{-1} B with A^{-1} = (Id 0; -L Id).
    IntMatrix ainv = IntMatrix::identity(g);
    for (int r = j; r < g; ++r)
      for (int c = 0; c < j; ++c) ainv(r, c) = -m.a()(r, c);
    const IntMatrix s = ainv * m.b();
    bool ok = true;
    for (int r = 0; r < g && ok; ++r)
      for (int c = 0; c < g; ++c)
        if (s(r, c) != s(c, r)) {
          ok = false;
          break;
        }
    for (int r = 0; r < j && ok; ++r)
      for (int c = 0; c < j; ++c)
        if (s(r, c) != 0) {
          ok = false;
          break;
        }
    if (ok) return j;
  }
  return std::nullopt;
}

bool is_boundary_family(const SymplecticInt& m) { return boundary_stratum(m).has_value(); }

namespace {

bool arithmetic_excluded(const SymplecticInt& m) {
  if (is_boundary_family(m)) return true;
  // The negative of a stratum element acts the same way; exclude it too.
  SymplecticInt neg = SymplecticInt::from_blocks(-m.a(), -m.b(), -m.c(), -m.d());
  return is_boundary_family(neg);
}

}  // namespace

std::size_t count_gamma(const GroupCache& cache, const CountQuery& query, int threads) {
  if (query.z.g() != cache.g || query.w.g() != cache.g)
    throw DimensionError("query points do not match the cache genus");
  if (!(query.radius > 0)) throw DomainError("count radius must be positive");

  const auto& elems = cache.elements;
  auto chunk_counts = par::map_chunks<std::size_t>(
      elems.size(), 256, threads, [&](std::size_t b, std::size_t e) {
        std::size_t n = 0;
        for (std::size_t i = b; i < e; ++i) {
          const SymplecticInt& m = elems[i];
          if (is_center(m)) continue;
          if (query.mode == CountMode::arithmetic && arithmetic_excluded(m)) continue;
          const siegel::SiegelPoint gw = siegel::act(m.to_real(), query.w);
          if (siegel::distance(query.z, gw) < query.radius) ++n;
        }
        return n;
      });
  std::size_t total = 0;
  for (std::size_t c : chunk_counts) total += c;
  return total;
}

InjectivityEstimate injectivity_radius_estimate(const GroupCache& cache,
                                                std::span<const siegel::SiegelPoint> samples,
                                                CountMode mode, int threads,
                                                const Tolerances& t) {
  if (samples.empty()) throw PreconditionError("injectivity estimate needs sample points");
  for (const auto& z : samples)
    if (z.g() != cache.g) throw DimensionError("sample does not match the cache genus");

  struct Partial {
    double min_disp = std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    std::size_t skipped = 0;
  };
  const auto& elems = cache.elements;
  const std::size_t total = elems.size() * samples.size();
  auto partials = par::map_chunks<Partial>(total, 256, threads, [&](std::size_t b, std::size_t e) {
    Partial p;
    for (std::size_t idx = b; idx < e; ++idx) {
      const SymplecticInt& m = elems[idx % elems.size()];
      const siegel::SiegelPoint& z = samples[idx / elems.size()];
      if (is_center(m)) continue;
      if (mode == CountMode::arithmetic && arithmetic_excluded(m)) continue;
      const double d = siegel::distance(z, siegel::act(m.to_real(), z, t), t);
      if (d < t.zero_displacement) {
        ++p.skipped;
        continue;
      }
      ++p.used;
      p.min_disp = std::min(p.min_disp, d);
    }
    return p;
  });
  InjectivityEstimate est;
  double min_disp = std::numeric_limits<double>::infinity();
  for (const auto& p : partials) {
    min_disp = std::min(min_disp, p.min_disp);
    est.displacements += p.used;
    est.skipped_fixed += p.skipped;
  }
  if (est.displacements == 0)
    throw PreconditionError("no admissible displacement: every cached element fixes the samples");
  est.radius = 0.5 * min_disp;
  return est;
}

std::vector<std::size_t> action_classes(const GroupCache& cache) {
  std::unordered_map<std::vector<long long>, std::size_t, VecHash> seen;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cache.elements.size(); ++i) {
    auto key = key_of(cache.elements[i].canonical_sign());
    if (seen.emplace(std::move(key), i).second) reps.push_back(i);
  }
  return reps;
}

std::vector<double> class_displacements(const GroupCache& cache, const siegel::SiegelPoint& z,
                                        const siegel::SiegelPoint& w, CountMode mode, int threads,
                                        const Tolerances& t) {
  if (z.g() != cache.g || w.g() != cache.g)
    throw DimensionError("points do not match the cache genus");
  const std::vector<std::size_t> reps = action_classes(cache);
  std::vector<std::size_t> admissible;
  admissible.reserve(reps.size());
  for (std::size_t idx : reps) {
    const SymplecticInt& m = cache.elements[idx];
    if (is_center(m)) continue;
    if (mode == CountMode::arithmetic && arithmetic_excluded(m)) continue;
    admissible.push_back(idx);
  }
  auto chunk_vals = par::map_chunks<std::vector<double>>(
      admissible.size(), 128, threads, [&](std::size_t b, std::size_t e) {
        std::vector<double> out;
        out.reserve(e - b);
        for (std::size_t i = b; i < e; ++i) {
          const SymplecticInt& m = cache.elements[admissible[i]];
          out.push_back(siegel::distance(z, siegel::act(m.to_real(), w, t), t));
        }
        return out;
      });
  std::vector<double> d;
  d.reserve(admissible.size());
  for (auto& c : chunk_vals) d.insert(d.end(), c.begin(), c.end());
  std::sort(d.begin(), d.end());
  return d;
}

std::size_t count_gamma_classes(const GroupCache& cache, const CountQuery& query, int threads) {
  if (!(query.radius > 0)) throw DomainError("count radius must be positive");
  const std::vector<double> d =
      class_displacements(cache, query.z, query.w, query.mode, threads);
  return static_cast<std::size_t>(
      std::lower_bound(d.begin(), d.end(), query.radius) - d.begin());
}

void save_cache(const GroupCache& cache, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileFormatError("cannot open cache file for writing: " + path, 0);
  std::string desc = cache.generator_desc.empty() ? "custom" : cache.generator_desc;
  for (char& ch : desc)
    if (std::isspace(static_cast<unsigned char>(ch))) ch = '_';
  out << "SPGZ 1 g=" << cache.g << " L=" << cache.word_length << " gens=" << desc << "\n";
  for (const auto& m : cache.elements) {
    const auto entries = m.full().data();
    for (std::size_t k = 0; k < entries.size(); ++k) out << (k ? " " : "") << entries[k];
    out << "\n";
  }
  if (!out) throw FileFormatError("write failure on cache file: " + path, 0);
}

GroupCache load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open cache file: " + path, 0);
  std::string header;
  if (!std::getline(in, header)) throw FileFormatError("empty cache file", 1);
  std::istringstream hs(header);
  std::string magic, version, gtok, ltok, genstok;
  hs >> magic >> version >> gtok >> ltok >> genstok;
  if (magic != "SPGZ" || version != "1")
    throw FileFormatError("bad cache header (expected 'SPGZ 1 ...')", 1);
  if (gtok.rfind("g=", 0) != 0 || ltok.rfind("L=", 0) != 0 || genstok.rfind("gens=", 0) != 0)
    throw FileFormatError("bad cache header fields", 1);
  GroupCache cache;
  try {
    cache.g = std::stoi(gtok.substr(2));
    cache.word_length = std::stoi(ltok.substr(2));
  } catch (const std::exception&) {
    throw FileFormatError("unparsable cache header numbers", 1);
  }
  if (cache.g < 1 || cache.word_length < 0) throw FileFormatError("cache header out of range", 1);
  cache.generator_desc = genstok.substr(5);

  const std::size_t want = 4 * static_cast<std::size_t>(cache.g) * cache.g;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<long long> entries;
    entries.reserve(want);
    long long v;
    while (ls >> v) entries.push_back(v);
    if (!ls.eof()) throw FileFormatError("non-integer token in cache row", row);
    if (entries.size() != want)
      throw FileFormatError("cache row has " + std::to_string(entries.size()) +
                                " entries, expected " + std::to_string(want),
                            row);
    arithmetic::IntMatrix m(2 * cache.g, 2 * cache.g);
    for (int i = 0; i < 2 * cache.g; ++i)
      for (int j = 0; j < 2 * cache.g; ++j)
        m(i, j) = entries[static_cast<std::size_t>(i) * 2 * cache.g + j];
    try {
      cache.elements.push_back(arithmetic::certify_symplectic(m));
    } catch (const CertifyError& err) {
      throw FileFormatError(std::string("cache row is not symplectic: ") + err.what(), row);
    }
  }
  if (cache.elements.empty()) throw FileFormatError("cache file holds no elements", row);
  return cache;
}

}  // namespace skl::enumeration
