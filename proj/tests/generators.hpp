#pragma once

// Random instance generators shared by the unit tests and the acceptance run.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "solfree/rainbow.hpp"

namespace testgen {

using namespace solfree;

// Random properly coloured system: each digraph is a union of random partial
// permutations, one per colour, so every colour class is a matching.
inline RestrictedSystem random_system(std::mt19937_64& rng, std::size_t n, std::size_t k, std::size_t colours, double density,
                               std::size_t ell) {
    std::vector<ColoredDigraph> ds;
    std::bernoulli_distribution coin(density);
    for (std::size_t i = 0; i < k; ++i) {
        ColoredDigraph d(n);
        for (Color c = 0; c < static_cast<Color>(colours); ++c) {
            std::vector<Vertex> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (Vertex u = 0; u < n; ++u)
                if (perm[u] != u && coin(rng)) d.add_arc(u, perm[u], c);
        }
        ds.push_back(std::move(d));
    }
    std::vector<std::vector<Color>> f(n);
    std::vector<Color> pool(colours);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    for (Vertex v = 0; v < n && next < pool.size(); ++v)
        for (std::size_t j = 0; j < ell && next < pool.size(); ++j)
            if (rng() % 3 == 0) f[v].push_back(pool[next++]);
    return RestrictedSystem(n, std::move(ds), std::move(f));
}

}  // namespace testgen
