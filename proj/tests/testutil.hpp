#pragma once

#include <cstdint>
#include <vector>

#include "fair/graph.hpp"

namespace testutil {

// xorshift-based deterministic rng so every driver takes an explicit seed
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    bool chance(double p) { return (next() >> 11) * 0x1.0p-53 < p; }
};

inline fair::Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return fair::Graph(n, e);
}

inline fair::Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return fair::Graph(n, e);
}

inline fair::Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    if (n > 2) e.emplace_back(0, n - 1);
    return fair::Graph(n, e);
}

inline fair::Graph star(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return fair::Graph(leaves + 1, e);
}

inline fair::Graph complete_multipartite(const std::vector<int>& parts) {
    int n = 0;
    for (int p : parts) n += p;
    std::vector<int> side;
    for (size_t i = 0; i < parts.size(); ++i)
        for (int j = 0; j < parts[i]; ++j) side.push_back(static_cast<int>(i));
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (side[u] != side[v]) e.emplace_back(u, v);
    return fair::Graph(n, e);
}

inline fair::Graph erdos_renyi(int n, double p, Rng& rng) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) e.emplace_back(u, v);
    return fair::Graph(n, e);
}

inline fair::Graph petersen() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);         // outer cycle
        e.emplace_back(i, i + 5);               // spokes
        e.emplace_back(i + 5, (i + 2) % 5 + 5); // inner pentagram
    }
    return fair::Graph(10, e);
}

} // namespace testutil
