#pragma once

#include <functional>
#include <vector>

#include "elena/config.hpp"
#include "elena/genome.hpp"
#include "elena/rng.hpp"
#include "elena/selection.hpp"

namespace elena {

// A contiguous sequence run whose LPs all met the stability threshold when
// it was extracted from a donor genome.
struct StableSegment {
    std::vector<int> lps;
    int source_subpop = -1;
    double mean_stability = 0.0;
};

struct RunResult {
    Genome best_genome;
    double best_objective = 0.0;
    // Running best objective per generation; entry 0 is the initial
    // population, so the list is non-increasing and ends at best_objective.
    std::vector<double> trajectory;
    int generations_run = 0;
    int last_improvement_generation = 0;
    double wall_time_seconds = 0.0;
    // Generations at which an HGT exchange actually ran.
    std::vector<int> hgt_generations;
};

struct Offspring {
    Genome genome;
    double objective = 0.0;
};

// Bridges the engine to one problem: objective evaluation, initialization,
// the full variation pipeline for one offspring, and HGT insertion. All
// methods are pure given the rng argument, so subpopulations can run them
// concurrently.
class ProblemBinding {
public:
    virtual ~ProblemBinding() = default;

    virtual std::size_t universe_size() const = 0;
    virtual RepresentationKind representation() const = 0;
    virtual double objective(const Genome& genome) const = 0;

    virtual Genome initial_genome(RandomStream& rng, const SolverConfig& config) const;

    // Variation pipeline from two tournament winners to one evaluated child.
    virtual Offspring make_offspring(const Genome& parent_a, double objective_a,
                                     const Genome& parent_b, double objective_b,
                                     RandomStream& rng, const SolverConfig& config) const = 0;

    // Splices a stable segment into a recipient. The default removes the
    // segment's LPs and re-splices them contiguously at a random point;
    // vertex-set problems override to restore their validity constraints.
    virtual Genome hgt_insert(const Genome& recipient, const StableSegment& segment,
                              RandomStream& rng, const SolverConfig& config) const;

    // Per-generation integrity sweep hook; throws on a violated invariant.
    virtual void validate_member(const Genome& genome) const;
};

struct Subpopulation {
    std::vector<Genome> members;
    RandomStream rng;
    int index = 0;
};

struct EvolveOptions {
    // Worker threads for the per-generation subpopulation steps. Results are
    // identical for any worker count: every subpopulation owns its stream
    // and cross-subpopulation work happens at a serialized barrier.
    int workers = 1;
    // Diagnostic switch: never schedule HGT at all (distinct from
    // hgt_probability = 0, which schedules exchanges that transfer nothing).
    bool disable_hgt = false;
    // Optional per-generation progress sink (generation, running best).
    std::function<void(int, double)> progress;
};

// Island-model evolutionary loop: per generation and subpopulation it
// evaluates members, keeps the elite, breeds offspring via size-3
// tournaments and the binding's variation pipeline, then every hgt_period
// generations exchanges stable segments between subpopulations. Stops when
// the global best has not improved for `patience` generations or the
// generation budget is exhausted.
RunResult evolve(const ProblemBinding& problem, const SolverConfig& config,
                 const EvolveOptions& options = {});

// Maximal runs of consecutive sequence positions whose LPs all have
// stability_score >= stability_threshold and length >= min_segment_length.
std::vector<StableSegment> extract_stable_segments(const Genome& genome,
                                                   const SolverConfig& config);

// Removes the segment's LPs from the recipient's sequence, then splices the
// segment contiguously at a uniformly sampled insertion point.
Genome insert_segment(const Genome& recipient, const StableSegment& segment, RandomStream& rng);

// All-pairs horizontal gene transfer at a generation barrier: for each
// ordered (donor, recipient) member pair across distinct subpopulations,
// with probability hgt_probability a uniformly chosen stable segment of the
// donor is inserted into the recipient, kept only if the recipient's
// objective does not worsen. Runs single-threaded; a no-op with fewer than
// two subpopulations.
void hgt_exchange(std::vector<Subpopulation>& subpopulations, const ProblemBinding& problem,
                  RandomStream& rng, const SolverConfig& config);

}  // namespace elena
