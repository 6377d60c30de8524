#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "tango/policy.hpp"

namespace tango {
namespace {

// Draws are done by hand because the standard distributions are not
// guaranteed to produce the same sequence across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Bonds a and b through one hydrogen-bearing atom of each; nullopt when
// either side has no hydrogen left.
std::optional<Molecule> join(const Molecule& a, const Molecule& b, Rng& rng) {
  auto sites = [](const Molecule& m) {
    std::vector<int> out;
    const auto ranks = m.canonical_ranks();
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
      if (m.atom(i).hydrogens > 0 && m.atom(i).element != 0) out.push_back(static_cast<int>(i));
    }
    std::sort(out.begin(), out.end(), [&](int x, int y) { return ranks[x] < ranks[y]; });
    return out;
  };
  const auto sa = sites(a);
  const auto sb = sites(b);
  if (sa.empty() || sb.empty()) return std::nullopt;
  const int ia = sa[rng.index(sa.size())];
  const int ib = sb[rng.index(sb.size())];

  std::vector<Atom> atoms(a.atoms().begin(), a.atoms().end());
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  std::vector<Bond> bonds(a.bonds().begin(), a.bonds().end());
  const int shift = static_cast<int>(a.atom_count());
  for (const Bond& bd : b.bonds()) bonds.push_back({bd.begin + shift, bd.end + shift, bd.order});
  bonds.push_back({ia, ib + shift, BondOrder::single});
  --atoms[ia].hydrogens;
  --atoms[ib + shift].hydrogens;
  return Molecule(std::move(atoms), std::move(bonds));
}

class Generator {
 public:
  explicit Generator(const GeneratorConfig& config) : config_(config) {
    if (config.min_depth < 1 || config.max_depth < config.min_depth) {
      throw std::invalid_argument("depth range must satisfy 1 <= min <= max");
    }
    if (config.branching < 1) throw std::invalid_argument("branching must be at least 1");
    if (config.distractors < 0) throw std::invalid_argument("distractors must be non-negative");
    for (const auto& s : fragment_alphabet()) {
      blocks_.push_back(parse_smiles(s));
      used_.insert(blocks_.back().canonical_key());
      out_.inventory.push_back(blocks_.back().canonical_key());
    }
  }

  GeneratedBenchmark run() {
    for (std::size_t i = 0; i < config_.instances; ++i) {
      Rng rng(mix(config_.seed) ^ mix(i + 1));
      make_instance(rng);
    }
    return std::move(out_);
  }

 private:
  static constexpr int kMaxAttempts = 200;

  bool claim(const Molecule& m) { return used_.insert(m.canonical_key()).second; }

  const Molecule& random_block(Rng& rng) { return blocks_[rng.index(blocks_.size())]; }

  // Probabilities for a product's reactions; entry 0 belongs to the first reaction added.
  std::vector<double> probabilities(std::size_t n, Rng& rng) {
    std::vector<double> w(n);
    double total = 0;
    for (auto& x : w) total += (x = rng.uniform(0.05, 1.0));
    for (auto& x : w) x /= total;
    return w;
  }

  std::optional<Molecule> decoy(int fragments, Rng& rng) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      std::optional<Molecule> m = blocks_[decoy_blocks_[rng.index(decoy_blocks_.size())]];
      for (int f = 1; f < fragments && m; ++f) {
        m = join(*m, blocks_[decoy_blocks_[rng.index(decoy_blocks_.size())]], rng);
      }
      if (m && claim(*m)) return m;
    }
    return std::nullopt;
  }

  // Off-route reactions for a product; decoys get their own down to `levels`.
  void add_distractors(int fragments, int levels, Rng& rng,
                       std::vector<std::pair<std::vector<Molecule>, bool>>& reactions) {
    for (int j = 0; j < config_.distractors; ++j) {
      auto d = decoy(std::max(fragments, 2), rng);
      if (!d) continue;
      reactions.push_back({{*d, random_block(rng)}, false});
      pending_.push_back({*d, std::max(fragments - config_.branching, 2), levels});
    }
  }

  void emit(const Molecule& product, std::vector<std::pair<std::vector<Molecule>, bool>> reactions,
            Rng& rng, std::vector<std::size_t>* true_index) {
    const auto p = probabilities(reactions.size(), rng);
    // Shuffle so the on-route reaction is not always listed first.
    for (std::size_t i = reactions.size(); i > 1; --i) {
      std::swap(reactions[i - 1], reactions[rng.index(i)]);
    }
    for (std::size_t i = 0; i < reactions.size(); ++i) {
      const std::size_t idx = out_.corpus.add(product, reactions[i].first, p[i]);
      if (reactions[i].second && true_index) true_index->push_back(idx);
    }
  }

  void make_instance(Rng& rng) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const std::size_t fa = rng.index(blocks_.size());
      std::size_t fb = rng.index(blocks_.size() - 1);
      if (fb >= fa) ++fb;
      const int depth = config_.min_depth +
                        static_cast<int>(rng.index(static_cast<std::size_t>(config_.max_depth - config_.min_depth + 1)));

      // route[0] is the target, route[depth] the starting material.
      std::vector<Molecule> route(static_cast<std::size_t>(depth) + 1, blocks_[fa]);
      std::vector<std::vector<Molecule>> added(static_cast<std::size_t>(depth));
      std::optional<Molecule> cur = join(blocks_[fa], blocks_[fb], rng);
      if (cur) route[depth] = *cur;
      for (int i = depth - 1; i >= 0 && cur; --i) {
        for (int b = 0; b < config_.branching && cur; ++b) {
          const Molecule& block = random_block(rng);
          added[i].push_back(block);
          cur = join(*cur, block, rng);
        }
        if (cur) route[i] = *cur;
      }
      if (!cur) continue;
      std::unordered_set<std::string> keys;
      bool fresh = true;
      // The starting material is purchasable, so it may repeat across instances.
      for (int i = 0; i < depth; ++i) {
        const auto& key = route[i].canonical_key();
        fresh = fresh && !used_.count(key) && keys.insert(key).second;
      }
      if (!fresh) continue;
      for (int i = 0; i < depth; ++i) claim(route[i]);

      decoy_blocks_.clear();
      for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (k != fa && k != fb) decoy_blocks_.push_back(k);
      }

      BenchmarkInstance inst{route.front(), route.back(), route, {}};
      for (int i = 0; i < depth; ++i) {
        std::vector<std::pair<std::vector<Molecule>, bool>> reactions;
        std::vector<Molecule> precursors{route[i + 1]};
        precursors.insert(precursors.end(), added[i].begin(), added[i].end());
        reactions.push_back({std::move(precursors), true});
        const int fragments = 2 + (depth - i - 1) * config_.branching;
        add_distractors(fragments, depth - i - 1, rng, reactions);
        emit(route[i], std::move(reactions), rng, &inst.route_reactions);
        drain(rng);
      }
      out_.instances.push_back(std::move(inst));
      return;
    }
    throw std::runtime_error("could not generate a fresh instance");
  }

  void drain(Rng& rng) {
    while (!pending_.empty()) {
      const Pending job = pending_.back();
      pending_.pop_back();
      if (job.levels <= 0) continue;
      std::vector<std::pair<std::vector<Molecule>, bool>> reactions;
      add_distractors(job.fragments, job.levels - 1, rng, reactions);
      if (!reactions.empty()) emit(job.mol, std::move(reactions), rng, nullptr);
    }
  }

  struct Pending {
    Molecule mol;
    int fragments;
    int levels;
  };

  GeneratorConfig config_;
  std::vector<Molecule> blocks_;
  std::vector<std::size_t> decoy_blocks_;
  std::unordered_set<std::string> used_;
  std::vector<Pending> pending_;
  GeneratedBenchmark out_;
};

}  // namespace

const std::vector<std::string>& fragment_alphabet() {
  static const std::vector<std::string> kAlphabet = {
      "c1ccccc1", "c1ccncc1", "c1ccsc1", "C1CCNCC1", "C1COCCN1", "C1CCOC1",
      "C1CC1",    "CC(C)C",   "CCO",     "NC=O",     "CS(C)(=O)=O", "FC(F)F",
  };
  return kAlphabet;
}

GeneratedBenchmark generate_benchmark(const GeneratorConfig& config) {
  return Generator(config).run();
}

GeneratedBenchmark generate_benchmark(std::uint64_t seed, std::size_t n_instances, int depth,
                                      int branching) {
  GeneratorConfig config;
  config.seed = seed;
  config.instances = n_instances;
  config.min_depth = config.max_depth = depth;
  config.branching = branching;
  return generate_benchmark(config);
}

}  // namespace tango
