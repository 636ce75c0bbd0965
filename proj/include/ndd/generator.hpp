// Copyright 2026 The Authors.
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

// Seeded synthetic instances: FCs and DSs scattered on a square map with
// spacing limits, lanes chosen by transit-time proximity from both ends,
// random cutoffs, category stocking and per-DS mixture demand profiles.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ndd/errors.hpp"
#include "ndd/model.hpp"
#include "ndd/rng.hpp"

namespace ndd {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int num_fcs = 10;
  double ds_ratio = 2.0;  // J = round(ratio * I)
  int num_categories = 50;
  int num_slots = 28;

  double map_side_km = 1200.0;
  double fc_min_spacing_km = 100.0;
  double ds_min_spacing_km = 30.0;
  double spacing_relax_factor = 0.99;
  int attempts_per_limit = 100;

  double speed_min_kmh = 60.0;
  double speed_max_kmh = 80.0;
  double fc_side_share = 0.50;  // DS among the nearest share of an FC's DSs
  double ds_side_share = 0.25;  // FC among the nearest share of a DS's FCs

  int deadline_min = 22;
  int deadline_max = 27;

  double stocked_min = 0.20;
  double stocked_max = 0.25;
  double request_prob_min = 0.5;
  double request_prob_max = 1.0;
  int products_min = 100;
  int products_max = 200;
  double category_mean_min = 1.0;
  double category_mean_max = 10.0;
  double product_sd_factor = 0.1;

  int profile_components = 3;
  double profile_sd_min = 1.0;
  double profile_sd_max = 4.0;
  int morning_slot = 9;
  int evening_slot = 19;

  int ob_capacity = 1;
  int ib_capacity = 1;

  int num_dss() const { return static_cast<int>(std::lround(ds_ratio * num_fcs)); }

  void validate() const {
    auto range = [](double lo, double hi, const char* what) {
      if (!(lo <= hi)) throw InvalidInput(std::string("inverted range: ") + what);
    };
    if (num_fcs < 1) throw InvalidInput("num_fcs must be >= 1");
    if (num_dss() < 1) throw InvalidInput("ds_ratio * num_fcs must round to >= 1");
    if (num_categories < 1) throw InvalidInput("num_categories must be >= 1");
    if (num_slots < 1) throw InvalidInput("num_slots must be >= 1");
    if (!(map_side_km > 0.0)) throw InvalidInput("map side must be positive");
    if (fc_min_spacing_km < 0.0 || ds_min_spacing_km < 0.0) {
      throw InvalidInput("spacing limits must be nonnegative");
    }
    if (!(spacing_relax_factor > 0.0 && spacing_relax_factor < 1.0)) {
      throw InvalidInput("spacing relax factor must lie in (0,1)");
    }
    if (attempts_per_limit < 1) throw InvalidInput("attempts_per_limit must be >= 1");
    range(speed_min_kmh, speed_max_kmh, "speed");
    if (!(speed_min_kmh > 0.0)) throw InvalidInput("speeds must be positive");
    if (!(fc_side_share > 0.0 && fc_side_share <= 1.0) ||
        !(ds_side_share > 0.0 && ds_side_share <= 1.0)) {
      throw InvalidInput("proximity shares must lie in (0,1]");
    }
    range(deadline_min, deadline_max, "deadline");
    if (deadline_min < 1 || deadline_max > num_slots) {
      throw InvalidInput("deadline range must lie within 1..num_slots");
    }
    range(stocked_min, stocked_max, "stocked fraction");
    if (stocked_min < 0.0 || stocked_max > 1.0) throw InvalidInput("stocked fraction outside [0,1]");
    range(request_prob_min, request_prob_max, "request probability");
    if (request_prob_min < 0.0 || request_prob_max > 1.0) {
      throw InvalidInput("request probability outside [0,1]");
    }
    range(products_min, products_max, "products per category");
    if (products_min < 1) throw InvalidInput("products per category must be >= 1");
    range(category_mean_min, category_mean_max, "category mean");
    if (category_mean_min < 0.0) throw InvalidInput("category means must be nonnegative");
    if (product_sd_factor < 0.0) throw InvalidInput("product sd factor must be nonnegative");
    if (profile_components < 1) throw InvalidInput("profile needs >= 1 component");
    range(profile_sd_min, profile_sd_max, "profile sd");
    if (!(profile_sd_min > 0.0)) throw InvalidInput("profile sd must be positive");
    if (ob_capacity < 1 || ib_capacity < 1) throw InvalidInput("capacities must be >= 1");
  }

  // Number of stocked categories per FC is drawn uniformly from this range.
  std::pair<int, int> stocked_count_range() const {
    const int lo = std::max(1, static_cast<int>(std::ceil(stocked_min * num_categories - 1e-9)));
    const int hi = std::max(lo, static_cast<int>(std::floor(stocked_max * num_categories + 1e-9)));
    return {lo, std::min(hi, num_categories)};
  }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_km(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct GeneratorMetadata {
  std::vector<Point> fc_xy;
  std::vector<Point> ds_xy;
  std::vector<double> fc_spacing_used;  // limit in force when each FC was placed
  std::vector<double> ds_spacing_used;
  std::vector<double> category_mean;
  std::vector<int> category_products;
  std::vector<double> ds_request_prob;
  std::vector<double> speed_kmh;  // row-major I x J, every pair, lane or not
};

struct GeneratedInstance {
  GeneratorConfig config;
  Instance instance;
  GeneratorMetadata meta;
};

inline Instance default_capacities(Instance inst, int ob_level, int ib_level) {
  if (ob_level < 1 || ib_level < 1) throw InvalidInput("capacity levels must be >= 1");
  std::fill(inst.ob_capacity.begin(), inst.ob_capacity.end(), ob_level);
  std::fill(inst.ib_capacity.begin(), inst.ib_capacity.end(), ib_level);
  return inst;
}

namespace detail {

// Samples a point at least `limit` away from every point in `others`,
// shrinking the limit after each batch of failed attempts.
inline Point place_node(std::mt19937_64& rng, double side, const std::vector<Point>& others,
                        double limit, double relax, int attempts, double& used) {
  std::uniform_real_distribution<double> coord(0.0, side);
  for (;;) {
    for (int a = 0; a < attempts; ++a) {
      const Point p{coord(rng), coord(rng)};
      bool ok = true;
      for (const Point& o : others) {
        if (distance_km(p, o) < limit) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used = limit;
        return p;
      }
    }
    limit *= relax;
  }
}

// Indices sorted by key, ties by index; the first `count` are the nearest.
inline std::vector<int> nearest(const std::vector<double>& key, int count) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key[a] < key[b]; });
  idx.resize(std::min<std::size_t>(count, idx.size()));
  return idx;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace detail

// Probability of each slot 1..T under a mixture of normals over the day,
// discretized to unit-width bins and renormalized onto the horizon.
inline std::vector<double> slot_profile(const std::vector<double>& means,
                                        const std::vector<double>& sds, int num_slots) {
  std::vector<double> p(num_slots + 1, 0.0);
  double total = 0.0;
  for (int t = 1; t <= num_slots; ++t) {
    for (std::size_t c = 0; c < means.size(); ++c) {
      p[t] += detail::normal_cdf((t + 0.5 - means[c]) / sds[c]) -
              detail::normal_cdf((t - 0.5 - means[c]) / sds[c]);
    }
    total += p[t];
  }
  if (total <= 0.0) {
    std::fill(p.begin() + 1, p.end(), 1.0 / num_slots);
  } else {
    for (double& v : p) v /= total;
  }
  return p;
}

inline GeneratedInstance generate(const GeneratorConfig& cfg) {
  cfg.validate();
  const int I = cfg.num_fcs;
  const int J = cfg.num_dss();
  const int K = cfg.num_categories;
  const int T = cfg.num_slots;
  GeneratedInstance out;
  out.config = cfg;
  Instance inst = Instance::empty(I, J, K, T);
  GeneratorMetadata& meta = out.meta;

  {
    auto rng = substream(cfg.seed, "geometry");
    for (int i = 0; i < I; ++i) {
      double used = 0.0;
      meta.fc_xy.push_back(detail::place_node(rng, cfg.map_side_km, meta.fc_xy,
                                              cfg.fc_min_spacing_km, cfg.spacing_relax_factor,
                                              cfg.attempts_per_limit, used));
      meta.fc_spacing_used.push_back(used);
    }
    std::vector<Point> all = meta.fc_xy;
    for (int j = 0; j < J; ++j) {
      double used = 0.0;
      const Point p = detail::place_node(rng, cfg.map_side_km, all, cfg.ds_min_spacing_km,
                                         cfg.spacing_relax_factor, cfg.attempts_per_limit, used);
      meta.ds_xy.push_back(p);
      meta.ds_spacing_used.push_back(used);
      all.push_back(p);
    }
  }

  {
    auto rng = substream(cfg.seed, "speed");
    std::uniform_real_distribution<double> speed(cfg.speed_min_kmh, cfg.speed_max_kmh);
    std::vector<double> hours(static_cast<std::size_t>(I) * J);
    meta.speed_kmh.resize(hours.size());
    for (int i = 0; i < I; ++i) {
      for (int j = 0; j < J; ++j) {
        const std::size_t k = static_cast<std::size_t>(i) * J + j;
        meta.speed_kmh[k] = speed(rng);
        hours[k] = distance_km(meta.fc_xy[i], meta.ds_xy[j]) / meta.speed_kmh[k];
      }
    }
    const int per_fc = static_cast<int>(std::ceil(cfg.fc_side_share * J - 1e-9));
    const int per_ds = static_cast<int>(std::ceil(cfg.ds_side_share * I - 1e-9));
    std::vector<char> link(hours.size(), 0);
    for (int i = 0; i < I; ++i) {
      std::vector<double> key(J);
      for (int j = 0; j < J; ++j) key[j] = hours[static_cast<std::size_t>(i) * J + j];
      for (int j : detail::nearest(key, per_fc)) link[static_cast<std::size_t>(i) * J + j] = 1;
    }
    for (int j = 0; j < J; ++j) {
      std::vector<double> key(I);
      for (int i = 0; i < I; ++i) key[i] = hours[static_cast<std::size_t>(i) * J + j];
      for (int i : detail::nearest(key, per_ds)) link[static_cast<std::size_t>(i) * J + j] = 1;
    }
    for (int i = 0; i < I; ++i) {
      for (int j = 0; j < J; ++j) {
        const std::size_t k = static_cast<std::size_t>(i) * J + j;
        if (link[k]) inst.set_transit(i, j, hours[k]);
      }
    }
  }

  {
    auto rng = substream(cfg.seed, "deadline");
    std::uniform_int_distribution<int> ad(cfg.deadline_min, cfg.deadline_max);
    for (int j = 0; j < J; ++j) inst.arrival_deadline[j] = ad(rng);
  }

  {
    auto rng = substream(cfg.seed, "stock");
    const auto [lo, hi] = cfg.stocked_count_range();
    std::uniform_int_distribution<int> count(lo, hi);
    std::vector<int> cats(K);
    for (int i = 0; i < I; ++i) {
      std::iota(cats.begin(), cats.end(), 0);
      std::shuffle(cats.begin(), cats.end(), rng);
      const int n = count(rng);
      for (int c = 0; c < n; ++c) inst.set_stock(i, cats[c]);
    }
  }

  // Items per category: sum over its products of the rounded, nonnegative
  // expected product demand.
  std::vector<long long> category_items(K, 0);
  {
    auto rng = substream(cfg.seed, "categories");
    std::uniform_real_distribution<double> mean(cfg.category_mean_min, cfg.category_mean_max);
    std::uniform_int_distribution<int> products(cfg.products_min, cfg.products_max);
    for (int k = 0; k < K; ++k) {
      const double m = mean(rng);
      const int n = products(rng);
      meta.category_mean.push_back(m);
      meta.category_products.push_back(n);
      std::normal_distribution<double> item(m, cfg.product_sd_factor * m);
      for (int q = 0; q < n; ++q) {
        category_items[k] += std::llround(std::max(0.0, cfg.product_sd_factor > 0 ? item(rng) : m));
      }
    }
  }

  {
    auto profile_rng = substream(cfg.seed, "profile");
    auto demand_rng = substream(cfg.seed, "demand");
    std::uniform_real_distribution<double> prob(cfg.request_prob_min, cfg.request_prob_max);
    std::uniform_real_distribution<double> sd(cfg.profile_sd_min, cfg.profile_sd_max);
    std::bernoulli_distribution coin(0.5);
    for (int j = 0; j < J; ++j) {
      std::uniform_real_distribution<double> mean(1.0, inst.arrival_deadline[j]);
      std::vector<double> means, sds;
      means.push_back(coin(profile_rng) ? cfg.morning_slot : cfg.evening_slot);
      for (int c = 1; c < cfg.profile_components; ++c) means.push_back(mean(profile_rng));
      for (int c = 0; c < cfg.profile_components; ++c) sds.push_back(sd(profile_rng));
      const std::vector<double> p = slot_profile(means, sds, T);
      const double pj = prob(profile_rng);
      meta.ds_request_prob.push_back(pj);
      std::bernoulli_distribution requests(pj);
      for (int k = 0; k < K; ++k) {
        if (!requests(demand_rng)) continue;
        // Multinomial over slots by a chain of binomials.
        long long left = category_items[k];
        double mass = 1.0;
        for (int t = 1; t <= T && left > 0; ++t) {
          long long n = left;
          if (t < T && mass > 0.0) {
            const double q = std::clamp(p[t] / mass, 0.0, 1.0);
            n = std::binomial_distribution<long long>(left, q)(demand_rng);
          }
          mass -= p[t];
          left -= n;
          if (n > 0) inst.add_demand(j, k, t, static_cast<double>(n));
        }
      }
    }
  }
  inst.normalize_demand();
  inst.ob_capacity.assign(I, cfg.ob_capacity);
  inst.ib_capacity.assign(J, cfg.ib_capacity);
  inst.validate();
  out.instance = std::move(inst);
  return out;
}

}  // namespace ndd
