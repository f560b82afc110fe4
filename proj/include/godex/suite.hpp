#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "godex/godement.hpp"
#include "godex/random.hpp"

namespace godex {

/// Drops zero entries.
std::map<int, std::size_t> nonzero_betti(const std::map<int, std::size_t>& betti);

inline const std::vector<std::string>& suite_posets() {
  static const std::vector<std::string> names{"point", "sierpinski", "chain3", "pseudocircle", "pseudosphere"};
  return names;
}

struct SuiteParams {
  /// Named posets; ignored when poset_size > 0.
  std::vector<std::string> posets = suite_posets();
  /// When positive, each trial draws a random poset of this size.
  int poset_size = 0;
  int trials = 20;
  std::size_t max_dim = 2;
  int lo = 0;
  int hi = 1;
  int n_top = 6;
  Field field = Field::prime(5);
};

struct TheoremInstance {
  std::string poset;
  int trial = 0;
  std::uint64_t seed = 0;
  bool rho_local = false;
  bool theta = false;
  bool thomason = false;
  /// Godement betti against the holim and strict-chain replacements.
  bool oracle = false;
  std::map<int, std::size_t> betti;
  int certified_degree = 0;
  std::vector<std::string> failures;

  bool all_pass() const { return rho_local && theta && thomason && oracle; }
};

struct TheoremReport {
  std::uint64_t seed = 0;
  std::vector<TheoremInstance> instances;
  bool all_pass() const;
};

/// The three conditions and the oracle comparison for one sheaf.
TheoremInstance check_theorem(const Sheaf& f, int n_top);
/// Instance i uses the seed seed + i, in poset-major order.
TheoremReport run_theorem_suite(std::uint64_t seed, const SuiteParams& params);

struct SkyscraperInstance {
  std::string poset;
  std::string point;
  std::string open;
  std::map<int, std::size_t> expected;
  std::map<int, std::size_t> got;
  bool pass() const { return expected == got; }
};
/// ℝΓ(U, x_*D) for one random D per poset, every x and every open U.
std::vector<SkyscraperInstance> run_skyscraper_suite(std::uint64_t seed, const SuiteParams& params);

struct LocalEqInstance {
  std::string poset;
  std::string kind;
  std::uint64_t seed = 0;
  bool w = false;
  bool t_s = false;
  bool h_s = false;
  int certified_degree = 0;
  bool agree() const { return w == t_s && t_s == h_s; }
};
/// f in W, T(f) in S and ℍ(f) in S on `trials` maps cycling through four
/// kinds: random, inclusion of an acyclic summand, projection off a
/// skyscraper summand, and ρ_F.
std::vector<LocalEqInstance> run_localeq_suite(std::uint64_t seed, const SuiteParams& params, int trials);

struct SeparationWitness {
  SheafMap map;
  EquivalenceReport local;
  EquivalenceReport global;
  int n_top = 0;
};
/// ρ_F for the constant sheaf on the pseudocircle: a stalkwise quis that
/// fails on the whole space in degree 1.
SeparationWitness separation_witness(const Field& field, int n_top);

}  // namespace godex
