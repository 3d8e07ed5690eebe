// Sampled droplet values: one complex value per grid node per (label, rank).
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "drops/operators.hpp"
#include "drops/tensors.hpp"

namespace drops {

struct Sample {
  double beta = 0.0;
  double alpha = 0.0;
  Complex value;
};

struct SampleEntry {
  DropletLabel label;
  int j = 0;
  std::vector<Sample> samples;
};

struct SampleSet {
  int n_spins = 1;
  std::vector<SampleEntry> entries;

  const SampleEntry* find(const DropletLabel& label, int j) const {
    for (const auto& e : entries)
      if (e.label == label && e.j == j) return &e;
    return nullptr;
  }

  // restrict to one label and, optionally, a subset of its ranks
  SampleSet filtered(const DropletLabel& label,
                     const std::optional<std::set<int>>& ranks = std::nullopt) const {
    SampleSet out{n_spins, {}};
    for (const auto& e : entries)
      if (e.label == label && (!ranks || ranks->count(e.j))) out.entries.push_back(e);
    return out;
  }
};

}  // namespace drops
