#include "elena/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "elena/errors.hpp"
#include "elena/operators.hpp"

namespace elena {

namespace {

// Label-path roots for the engine's random streams. Subpopulation s draws
// from {kSubpopLabel, s}; HGT draws from its own stream so that disabling
// transfers cannot perturb subpopulation evolution.
constexpr std::uint32_t kSubpopLabel = 1;
constexpr std::uint32_t kHgtLabel = 2;

struct Evaluated {
    double objective = 0.0;
    SelectionKey key;
};

std::vector<Evaluated> evaluate_all(const std::vector<Genome>& members,
                                    const ProblemBinding& problem) {
    std::vector<Evaluated> eval(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double objective = problem.objective(members[i]);
        eval[i] = Evaluated{objective, selection_key(members[i], objective)};
    }
    return eval;
}

std::vector<std::size_t> ranked_order(const std::vector<Genome>& members,
                                      const std::vector<Evaluated>& eval) {
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return selection_precedes(eval[a].key, members[a], eval[b].key, members[b]);
    });
    return order;
}

std::size_t tournament_pick(const std::vector<Genome>& members, const std::vector<Evaluated>& eval,
                            RandomStream& rng) {
    std::size_t best = rng.next_index(members.size());
    for (int k = 1; k < 3; ++k) {
        const std::size_t challenger = rng.next_index(members.size());
        if (selection_precedes(eval[challenger].key, members[challenger], eval[best].key,
                               members[best])) {
            best = challenger;
        }
    }
    return best;
}

std::size_t elite_count(const SolverConfig& config, std::size_t subpop_size) {
    const auto rounded =
        static_cast<std::size_t>(std::llround(config.elitism_fraction * subpop_size));
    return std::min(subpop_size, std::max<std::size_t>(1, rounded));
}

// One generation of one subpopulation: evaluate, keep the elite, refill with
// tournament offspring. Touches only the subpopulation's own stream.
void step_subpopulation(Subpopulation& sub, const ProblemBinding& problem,
                        const SolverConfig& config) {
    const std::size_t size = sub.members.size();
    const auto eval = evaluate_all(sub.members, problem);
    const auto order = ranked_order(sub.members, eval);

    std::vector<Genome> next;
    next.reserve(size);
    const std::size_t elites = elite_count(config, size);
    for (std::size_t e = 0; e < elites; ++e) {
        next.push_back(sub.members[order[e]]);
    }
    while (next.size() < size) {
        const std::size_t a = tournament_pick(sub.members, eval, sub.rng);
        const std::size_t b = tournament_pick(sub.members, eval, sub.rng);
        Offspring child =
            problem.make_offspring(sub.members[a], eval[a].objective, sub.members[b],
                                   eval[b].objective, sub.rng, config);
        next.push_back(std::move(child.genome));
    }
    sub.members = std::move(next);
}

// Runs fn over every subpopulation, fanning out to at most `workers`
// threads. Subpopulation steps share no mutable state, so any worker count
// produces identical results.
void for_each_subpopulation(std::vector<Subpopulation>& subs, int workers,
                            const std::function<void(Subpopulation&)>& fn) {
    const int count = static_cast<int>(subs.size());
    const int threads = std::max(1, std::min(workers, count));
    if (threads == 1) {
        for (auto& sub : subs) {
            fn(sub);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int tid = 0; tid < threads; ++tid) {
        pool.emplace_back([&, tid]() {
            try {
                for (int s = tid; s < count; s += threads) {
                    fn(subs[s]);
                }
            } catch (...) {
                errors[tid] = std::current_exception();
            }
        });
    }
    for (auto& thread : pool) {
        thread.join();
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

void try_transfer(Subpopulation& donor_sub, std::size_t donor_idx, Subpopulation& recipient_sub,
                  std::size_t recipient_idx, const ProblemBinding& problem, RandomStream& rng,
                  const SolverConfig& config) {
    if (!rng.bernoulli(config.hgt_probability)) {
        return;
    }
    const Genome& donor = donor_sub.members[donor_idx];
    auto segments = extract_stable_segments(donor, config);
    if (segments.empty()) {
        return;
    }
    StableSegment segment = std::move(segments[rng.next_index(segments.size())]);
    segment.source_subpop = donor_sub.index;

    Genome& recipient = recipient_sub.members[recipient_idx];
    const double before = problem.objective(recipient);
    Genome modified = problem.hgt_insert(recipient, segment, rng, config);
    if (problem.objective(modified) <= before) {
        recipient = std::move(modified);
    }
}

}  // namespace

Genome ProblemBinding::initial_genome(RandomStream& rng, const SolverConfig& config) const {
    return new_genome(universe_size(), representation(), config.initial_tags, rng);
}

Genome ProblemBinding::hgt_insert(const Genome& recipient, const StableSegment& segment,
                                  RandomStream& rng, const SolverConfig& config) const {
    (void)config;
    return insert_segment(recipient, segment, rng);
}

void ProblemBinding::validate_member(const Genome& genome) const { (void)genome; }

std::vector<StableSegment> extract_stable_segments(const Genome& genome,
                                                   const SolverConfig& config) {
    std::vector<StableSegment> segments;
    const auto& seq = genome.sequence;
    std::size_t i = 0;
    while (i < seq.size()) {
        if (genome.tags[seq[i]].stability_score < config.stability_threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        double sum = 0.0;
        while (j < seq.size() &&
               genome.tags[seq[j]].stability_score >= config.stability_threshold) {
            sum += genome.tags[seq[j]].stability_score;
            ++j;
        }
        if (j - i >= static_cast<std::size_t>(config.min_segment_length)) {
            StableSegment segment;
            segment.lps.assign(seq.begin() + static_cast<std::ptrdiff_t>(i),
                               seq.begin() + static_cast<std::ptrdiff_t>(j));
            segment.mean_stability = sum / static_cast<double>(j - i);
            segments.push_back(std::move(segment));
        }
        i = j;
    }
    return segments;
}

Genome insert_segment(const Genome& recipient, const StableSegment& segment, RandomStream& rng) {
    Genome out = recipient;
    std::vector<bool> in_segment(recipient.universe_size(), false);
    for (int lp : segment.lps) {
        assert(lp >= 0 && static_cast<std::size_t>(lp) < recipient.universe_size());
        in_segment[lp] = true;
    }
    auto& seq = out.sequence;
    seq.erase(std::remove_if(seq.begin(), seq.end(), [&](int lp) { return in_segment[lp]; }),
              seq.end());
    const std::size_t point = rng.next_index(seq.size() + 1);
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(point), segment.lps.begin(),
               segment.lps.end());
    return out;
}

void hgt_exchange(std::vector<Subpopulation>& subpopulations, const ProblemBinding& problem,
                  RandomStream& rng, const SolverConfig& config) {
    if (subpopulations.size() < 2) {
        return;
    }
    for (std::size_t i = 0; i + 1 < subpopulations.size(); ++i) {
        for (std::size_t j = i + 1; j < subpopulations.size(); ++j) {
            auto& sub_i = subpopulations[i];
            auto& sub_j = subpopulations[j];
            for (std::size_t a = 0; a < sub_i.members.size(); ++a) {
                for (std::size_t b = 0; b < sub_j.members.size(); ++b) {
                    try_transfer(sub_i, a, sub_j, b, problem, rng, config);
                    try_transfer(sub_j, b, sub_i, a, problem, rng, config);
                }
            }
        }
    }
}

RunResult evolve(const ProblemBinding& problem, const SolverConfig& config,
                 const EvolveOptions& options) {
    config.validate();
    const std::size_t n = problem.universe_size();
    if (n == 0) {
        throw ValidationError("evolve: problem has an empty LP universe");
    }

    const auto start_time = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
            .count();
    };

    RunResult result;

    // A single-LP universe admits exactly one solution; nothing to evolve.
    if (n == 1) {
        RandomStream rng = split_stream(config.master_seed, {kSubpopLabel, 0});
        result.best_genome = problem.initial_genome(rng, config);
        result.best_objective = problem.objective(result.best_genome);
        result.trajectory = {result.best_objective};
        result.wall_time_seconds = elapsed();
        return result;
    }

    const auto sizes = config.subpopulation_sizes();
    std::vector<Subpopulation> subs(sizes.size());
    for (std::size_t s = 0; s < subs.size(); ++s) {
        subs[s].index = static_cast<int>(s);
        subs[s].rng = split_stream(config.master_seed, {kSubpopLabel, static_cast<std::uint32_t>(s)});
        subs[s].members.reserve(sizes[s]);
        for (int m = 0; m < sizes[s]; ++m) {
            subs[s].members.push_back(problem.initial_genome(subs[s].rng, config));
        }
    }
    RandomStream hgt_rng = split_stream(config.master_seed, {kHgtLabel});

    bool have_best = false;
    SelectionKey best_key;
    double best_objective = 0.0;

    // Scans every member in deterministic order and updates the global best.
    auto scan_population = [&]() {
        for (const auto& sub : subs) {
            for (const auto& member : sub.members) {
                problem.validate_member(member);
                const double objective = problem.objective(member);
                const SelectionKey key = selection_key(member, objective);
                if (!have_best ||
                    selection_precedes(key, member, best_key, result.best_genome)) {
                    have_best = true;
                    best_key = key;
                    best_objective = objective;
                    result.best_genome = member;
                }
            }
        }
    };

    scan_population();
    result.trajectory.push_back(best_objective);
    result.last_improvement_generation = 0;
    if (options.progress) {
        options.progress(0, best_objective);
    }

    for (int generation = 1; generation <= config.max_generations; ++generation) {
        for_each_subpopulation(subs, options.workers, [&](Subpopulation& sub) {
            step_subpopulation(sub, problem, config);
        });

        if (!options.disable_hgt && subs.size() >= 2 && generation % config.hgt_period == 0) {
            hgt_exchange(subs, problem, hgt_rng, config);
            result.hgt_generations.push_back(generation);
        }

        const double previous_best = best_objective;
        scan_population();
        result.trajectory.push_back(best_objective);
        result.generations_run = generation;
        if (best_objective < previous_best - kImprovementTol) {
            result.last_improvement_generation = generation;
        }
        if (options.progress) {
            options.progress(generation, best_objective);
        }
        if (generation - result.last_improvement_generation >= config.patience) {
            break;
        }
    }

    result.best_objective = best_objective;
    result.wall_time_seconds = elapsed();
    return result;
}

}  // namespace elena
