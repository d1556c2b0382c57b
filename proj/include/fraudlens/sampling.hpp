#pragma once

// Balanced coverage planning over (fraud_type, major_tactic, major_theory)
// triplets and per-sample generation seeds.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fraudlens/taxonomy.hpp"

namespace fraudlens {

struct TripletPlanEntry {
    std::string fraud_type;
    std::string major_tactic;
    std::string major_theory;
    int count = 0;

    bool operator==(const TripletPlanEntry&) const = default;
};

struct TripletPlan {
    std::vector<TripletPlanEntry> entries;
    long long total = 0;

    bool operator==(const TripletPlan&) const = default;
};

// Floor split plus one extra for n_total mod |C| triplets. Extras are drawn
// from a seeded shuffle, cycled across fraud types so per-type totals never
// drift by more than one extra regardless of seed.
TripletPlan plan_triplets(long long n_total, const LabelSpace& space, uint64_t rng_seed);

struct GenerationSeed {
    std::string fraud_type;
    std::string major_tactic;
    std::string major_theory;
    long long sample_index = 0;
    uint64_t nonce = 0;

    bool operator==(const GenerationSeed&) const = default;
};

// Exactly plan.total seeds, sample_index 0..total-1 in plan order, nonces from
// a generator seeded with rng_seed.
std::vector<GenerationSeed> seeds_for_plan(const TripletPlan& plan, uint64_t rng_seed);

void save_plan(const TripletPlan& plan, const std::filesystem::path& path);
TripletPlan load_plan(const std::filesystem::path& path);

// Per-fraud-type sample totals, keyed by the plan's fraud_type strings in
// first-appearance order.
std::vector<std::pair<std::string, long long>> fraud_type_marginals(const TripletPlan& plan);

}  // namespace fraudlens
