// Copyright 2026 The swarmplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swarmplan/pso.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <utility>

#include "swarmplan/rng.hpp"

namespace swarmplan {

namespace {

// Speed, accel, and curvature entering the first optimizable step, taken
// from the trailing fixed poses.
struct JunctionState {
    double v{0.0};
    double a{0.0};
    double kappa{0.0};
};

JunctionState junction_state(const std::vector<Pose>& fixed, double dt) {
    JunctionState js;
    const int m = static_cast<int>(fixed.size());
    auto speed_at = [&](int i) {
        return std::hypot(fixed[i + 1].x - fixed[i].x,
                          fixed[i + 1].y - fixed[i].y) / dt;
    };
    if (m >= 2) {
        js.v = speed_at(m - 2);
        const double l = js.v * dt;
        if (l >= kDegenerateStep) {
            js.kappa =
                normalize_angle(fixed[m - 1].theta - fixed[m - 2].theta) / l;
        }
    }
    if (m >= 3) {
        js.a = (speed_at(m - 2) - speed_at(m - 3)) / dt;
    }
    return js;
}

// Draws one internally-consistent control sequence: accelerations move
// within the jolt window, speeds within the accel window and speed limit,
// curvature within the steer-rate window and under the yaw-rate cap. The
// guard keeps samples strictly inside every bound so margins recomputed
// from the rolled-out poses stay positive.
std::vector<double> sample_position(const JunctionState& seed, int steps,
                                    double dt, const Limits& lim,
                                    double speed_limit, RandomStream& rs) {
    constexpr double kGuard = 0.999;
    std::vector<double> pos;
    pos.reserve(2 * steps);
    double v = seed.v;
    double a = seed.a;
    double kappa = seed.kappa;
    const double jg = lim.max_jolt * kGuard;
    const double v_max = speed_limit * kGuard;
    // Largest acceleration magnitude that can still be unwound to zero at
    // jolt jg before eating the given speed headroom. Keeps the walk out
    // of corners where the speed bound and the jolt window conflict.
    const auto unwindable = [&](double headroom) {
        const double b = jg * dt;
        return -b + std::sqrt(b * b + 2.0 * jg * std::max(0.0, headroom));
    };
    for (int i = 0; i < steps; ++i) {
        const double a_hi = std::min(
            {lim.max_accel * kGuard, a + jg * dt, unwindable(v_max - v)});
        const double a_lo = std::max(
            {-lim.max_decel * kGuard, a - jg * dt, -unwindable(v)});
        const double ua = rs.next();
        // An out-of-envelope junction can leave an empty window; collapse
        // to its midpoint and let the validity check sort the sample out.
        const double a_next = a_hi < a_lo ? 0.5 * (a_lo + a_hi)
                                          : a_lo + ua * (a_hi - a_lo);
        const double v_next = std::clamp(v + a_next * dt, 0.0, v_max);

        double k_lo = kappa - lim.max_steer_rate * dt * kGuard;
        double k_hi = kappa + lim.max_steer_rate * dt * kGuard;
        if (v_next > 1e-9) {
            const double cap = lim.max_yaw_rate * kGuard / v_next;
            k_lo = std::max(k_lo, -cap);
            k_hi = std::min(k_hi, cap);
        }
        const double u = rs.next();
        kappa = k_hi < k_lo ? 0.5 * (k_lo + k_hi) : k_lo + u * (k_hi - k_lo);

        a = (v_next - v) / dt;
        v = v_next;
        pos.push_back(v * dt);
        pos.push_back(kappa);
    }
    return pos;
}

// Drop consumed leading controls, pad the tail by holding the last pair.
std::vector<double> refit_position(std::span<const double> old_pos,
                                   int shift_steps, int new_dim) {
    std::vector<double> pos;
    pos.reserve(new_dim);
    const int start = 2 * std::max(0, shift_steps);
    for (int i = start; i < static_cast<int>(old_pos.size()) &&
                        static_cast<int>(pos.size()) < new_dim; ++i) {
        pos.push_back(old_pos[i]);
    }
    double last_l = 0.0, last_k = 0.0;
    if (pos.size() >= 2) {
        last_l = pos[pos.size() - 2];
        last_k = pos[pos.size() - 1];
    } else if (old_pos.size() >= 2) {
        last_l = old_pos[old_pos.size() - 2];
        last_k = old_pos[old_pos.size() - 1];
    }
    while (static_cast<int>(pos.size()) < new_dim) {
        pos.push_back(last_l);
        pos.push_back(last_k);
    }
    return pos;
}

// Constraint + fitness evaluation of one particle; updates only the
// particle's own state, so many can run concurrently.
void evaluate_one(Particle& p, const Swarm& swarm,
                  const EnvironmentSnapshot& snap, const PlannerConfig& cfg) {
    const Trajectory traj = decode_particle(swarm, p.position);
    const Evaluation ev =
        evaluate(traj, snap, cfg.weights, cfg.limits, cfg.shaping, true);
    p.valid = ev.constraints.valid;
    if (p.valid) {
        p.fitness = ev.costs.total;
        if (!p.has_best || ev.costs.total < p.best_fitness) {
            p.has_best = true;
            p.best_fitness = ev.costs.total;
            p.best_position = p.position;
            p.best_costs = ev.costs;
        }
    }
}

// Applies `work` to each index, parallel over contiguous chunks. Results
// must depend only on the index so the thread count cannot change them.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& work) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const int lo = count * t / threads;
        const int hi = count * (t + 1) / threads;
        pool.emplace_back([&work, lo, hi] {
            for (int i = lo; i < hi; ++i) work(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

void evaluate_particles(std::vector<Particle>& particles,
                        const std::vector<int>& indices, const Swarm& swarm,
                        const EnvironmentSnapshot& snap,
                        const PlannerConfig& cfg) {
    parallel_for(static_cast<int>(indices.size()), cfg.swarm.threads,
                 [&](int i) {
                     evaluate_one(particles[indices[i]], swarm, snap, cfg);
                 });
}

// Lowest fitness among personal bests; ties go to the lowest index.
int best_particle_index(const std::vector<Particle>& particles) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(particles.size()); ++i) {
        if (!particles[i].has_best) continue;
        if (best < 0 || particles[i].best_fitness <
                            particles[best].best_fitness) {
            best = i;
        }
    }
    return best;
}

double mean_pairwise_distance(const std::vector<Particle>& particles) {
    const int n = static_cast<int>(particles.size());
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            const auto& a = particles[i].position;
            const auto& b = particles[j].position;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double d = a[k] - b[k];
                d2 += d * d;
            }
            sum += std::sqrt(d2);
        }
    }
    return sum / (0.5 * n * (n - 1));
}

}  // namespace

std::vector<double> update_velocity(const Particle& p,
                                    std::span<const double> global_best,
                                    const SwarmConfig& cfg,
                                    std::span<const double> u1,
                                    std::span<const double> u2) {
    const std::size_t dim = p.position.size();
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double r1 = u1.size() == 1 ? u1[0] : u1[i];
        const double r2 = u2.size() == 1 ? u2[0] : u2[i];
        v[i] = cfg.w_v * p.velocity[i] +
               cfg.w_p * r1 * (p.best_position[i] - p.position[i]) +
               cfg.w_g * r2 * (global_best[i] - p.position[i]);
    }
    return v;
}

std::vector<double> update_position(const Particle& p,
                                    std::span<const double> v_next,
                                    double l_max) {
    const std::size_t dim = p.position.size();
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        x[i] = p.position[i] + v_next[i];
        if (i % 2 == 0) x[i] = std::clamp(x[i], 0.0, l_max);
    }
    return x;
}

Trajectory decode_particle(const Swarm& swarm,
                           std::span<const double> position) {
    Trajectory traj;
    traj.dt = swarm.dt;
    traj.t0 = swarm.t0;
    traj.prefix_len = swarm.prefix_len;
    traj.frozen_len = swarm.frozen_len;
    traj.poses = swarm.fixed;
    traj.poses.reserve(swarm.fixed.size() + position.size() / 2);
    Pose cur = swarm.fixed.back();
    for (std::size_t i = 0; i + 1 < position.size(); i += 2) {
        cur = apply_control(cur, Control{position[i], position[i + 1]});
        traj.poses.push_back(cur);
    }
    return traj;
}

Swarm initialize_swarm(const Trajectory& tmpl, const Swarm* prev_swarm,
                       const EnvironmentSnapshot& snap,
                       const PlannerConfig& cfg, std::uint64_t cycle) {
    const SwarmConfig& sw = cfg.swarm;
    Swarm swarm;
    swarm.dt = tmpl.dt;
    swarm.t0 = tmpl.t0;
    swarm.prefix_len = tmpl.prefix_len;
    swarm.frozen_len = tmpl.frozen_len;
    swarm.horizon_steps = cfg.horizon_steps;
    swarm.run_key = splitmix64(sw.seed ^ (cycle * 0x9e3779b97f4a7c15ull));
    const int fixed_count = tmpl.prefix_len + tmpl.frozen_len + 1;
    if (tmpl.size() < fixed_count || swarm.dim() < 2) {
        throw ValidationError("template leaves no optimizable step");
    }
    swarm.fixed.assign(tmpl.poses.begin(), tmpl.poses.begin() + fixed_count);

    const int dim = swarm.dim();
    const double l_max = snap.mode.speed_limit * swarm.dt;
    auto make_particle = [&](std::vector<double> pos) {
        Particle p;
        p.position = std::move(pos);
        p.position.resize(dim, 0.0);
        for (std::size_t i = 0; i < p.position.size(); i += 2) {
            p.position[i] = std::clamp(p.position[i], 0.0, l_max);
        }
        p.velocity.assign(dim, 0.0);
        // Personal best starts at the initial position; its fitness stays
        // unset until the first valid evaluation.
        p.best_position = p.position;
        return p;
    };

    std::vector<Particle>& particles = swarm.particles;
    particles.reserve(sw.n_particles);

    // Loop back the previous best and carry over surviving particles,
    // re-fitted to the shifted template.
    if (prev_swarm && prev_swarm->best_index >= 0) {
        const int shift = static_cast<int>(std::lround(
            (swarm.t_first_free() - prev_swarm->t_first_free()) /
            swarm.dt));
        std::vector<Particle> candidates;
        std::vector<bool> is_best;
        const Particle& prev_best =
            prev_swarm->particles[prev_swarm->best_index];
        candidates.push_back(
            make_particle(refit_position(prev_best.best_position, shift, dim)));
        is_best.push_back(true);
        for (int i = 0; i < static_cast<int>(prev_swarm->particles.size());
             ++i) {
            if (i == prev_swarm->best_index) continue;
            if (static_cast<int>(candidates.size()) >= sw.n_particles) break;
            candidates.push_back(make_particle(refit_position(
                prev_swarm->particles[i].position, shift, dim)));
            is_best.push_back(false);
        }
        // Validity screen runs against this cycle's snapshot.
        std::vector<int> all(candidates.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        evaluate_particles(candidates, all, swarm, snap, cfg);
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!candidates[i].valid) continue;
            if (!is_best[i]) {
                RandomStream drop(swarm.run_key, kStreamDrop,
                                  static_cast<std::uint64_t>(i), 0);
                if (drop.next() < sw.carryover_drop_rate) continue;
            }
            if (static_cast<int>(particles.size()) < sw.n_particles) {
                particles.push_back(std::move(candidates[i]));
            }
        }
    }

    // Guided sampling for the remaining slots, with resampling rounds until
    // enough of the swarm is valid.
    const JunctionState seed = junction_state(swarm.fixed, swarm.dt);
    const int steps = dim / 2;
    const int first_sampled = static_cast<int>(particles.size());
    for (int slot = first_sampled; slot < sw.n_particles; ++slot) {
        RandomStream rs(swarm.run_key, kStreamInit,
                        static_cast<std::uint64_t>(slot), 0);
        particles.push_back(make_particle(sample_position(
            seed, steps, swarm.dt, cfg.limits, snap.mode.speed_limit, rs)));
    }
    {
        std::vector<int> fresh;
        for (int i = first_sampled; i < sw.n_particles; ++i) fresh.push_back(i);
        evaluate_particles(particles, fresh, swarm, snap, cfg);
    }

    auto count_valid = [&] {
        int c = 0;
        for (const Particle& p : particles) c += p.valid ? 1 : 0;
        return c;
    };
    const int min_valid = std::max(
        1, static_cast<int>(std::ceil(sw.min_valid_fraction * sw.n_particles)));
    int valid = count_valid();
    for (int round = 1; round <= sw.retry_rounds && valid < min_valid;
         ++round) {
        std::vector<int> redo;
        for (int i = first_sampled; i < sw.n_particles; ++i) {
            if (!particles[i].valid) {
                RandomStream rs(swarm.run_key, kStreamInit,
                                static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(round));
                particles[i] = make_particle(
                    sample_position(seed, steps, swarm.dt, cfg.limits,
                                    snap.mode.speed_limit, rs));
                redo.push_back(i);
            }
        }
        if (redo.empty()) break;
        evaluate_particles(particles, redo, swarm, snap, cfg);
        valid = count_valid();
    }
    if (valid == 0) {
        throw NoValidParticle(
            "swarm initialization found no valid particle");
    }
    swarm.init_valid_count = valid;
    swarm.best_index = best_particle_index(particles);
    swarm.initial_diversity = mean_pairwise_distance(particles);
    return swarm;
}

EngineResult optimize(Swarm& swarm, const EnvironmentSnapshot& snap,
                      const PlannerConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const SwarmConfig& sw = cfg.swarm;
    const int n = static_cast<int>(swarm.particles.size());
    const int dim = swarm.dim();
    const double l_max = snap.mode.speed_limit * swarm.dt;

    EngineResult result;
    SwarmStats& stats = result.stats;
    stats.rows.push_back({0,
                          swarm.particles[swarm.best_index].best_fitness,
                          swarm.init_valid_count});

    for (int iter = 1; iter <= sw.max_iterations; ++iter) {
        // Synchronous update: every particle sees the same global best, so
        // move and re-evaluation fuse into one parallel pass.
        const std::vector<double> global_best =
            swarm.particles[swarm.best_index].best_position;

        parallel_for(n, sw.threads, [&](int idx) {
            Particle& p = swarm.particles[idx];
            RandomStream rs(swarm.run_key, kStreamUpdate,
                            static_cast<std::uint64_t>(idx),
                            static_cast<std::uint64_t>(iter));
            double u1s = 0.0, u2s = 0.0;
            std::vector<double> u1v, u2v;
            std::span<const double> u1(&u1s, 1), u2(&u2s, 1);
            if (sw.scalar_u) {
                u1s = rs.next();
                u2s = rs.next();
            } else {
                u1v.resize(dim);
                u2v.resize(dim);
                for (double& u : u1v) u = rs.next();
                for (double& u : u2v) u = rs.next();
                u1 = u1v;
                u2 = u2v;
            }
            p.velocity = update_velocity(p, global_best, sw, u1, u2);
            p.position = update_position(p, p.velocity, l_max);
            evaluate_one(p, swarm, snap, cfg);
        });

        swarm.best_index = best_particle_index(swarm.particles);
        stats.iterations = iter;
        int valid = 0;
        for (const Particle& p : swarm.particles) valid += p.valid ? 1 : 0;
        stats.rows.push_back(
            {iter, swarm.particles[swarm.best_index].best_fitness, valid});

        if (sw.fitness_target &&
            swarm.particles[swarm.best_index].best_fitness <=
                *sw.fitness_target) {
            break;
        }
        if (sw.time_budget > 0.0 &&
            std::chrono::duration<double>(clock::now() - start).count() >
                sw.time_budget) {
            break;
        }
        if (swarm.initial_diversity > 0.0 &&
            mean_pairwise_distance(swarm.particles) <
                sw.diversity_epsilon * swarm.initial_diversity) {
            break;
        }
    }

    const Particle& best = swarm.particles[swarm.best_index];
    result.trajectory = decode_particle(swarm, best.best_position);
    result.costs = best.best_costs;
    stats.wall_time =
        std::chrono::duration<double>(clock::now() - start).count();
    return result;
}

}  // namespace swarmplan
