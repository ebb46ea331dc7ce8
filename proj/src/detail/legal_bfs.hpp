#pragma once

#include "chipfire/error.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace chipfire::detail {

inline std::size_t hash_state(std::span<const std::int64_t> s) noexcept
{
    std::size_t h = s.size();
    for (auto v : s) {
        std::uint64_t x = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        h ^= (x ^ (x >> 31)) + (h << 6) + (h >> 2);
    }
    return h;
}

inline std::size_t hash_state(std::span<const Integer> s) noexcept { return IntegerVectorHash{}(s); }

/// Breadth-first search over legal firings. States live contiguously in one
/// arena (n chips each) in discovery order, so the arena doubles as the queue.
///
/// Chip is std::int64_t or Integer. The int64 instantiation is exact whenever
/// the start total fits in int64: legal moves keep every entry in [0, total].
template <class Chip>
class LegalBfs {
public:
    LegalBfs(const Graph& g, std::uint64_t max_states)
        : g_(g), n_(g.vertex_count()), max_states_(max_states), seen_(64, Hasher{this}, Equal{this})
    {
        for (Vertex v = 0; v < n_; ++v) degree_.push_back(Chip(static_cast<long>(g.degree(v))));
    }
    LegalBfs(const LegalBfs&) = delete;
    LegalBfs& operator=(const LegalBfs&) = delete;

    // Calls on_state for every reachable state in BFS order, starting with
    // `start`. Stops early when on_state returns false. Returns the number of
    // distinct states discovered. Throws ResourceExceeded past max_states.
    template <class Fn>
    std::uint64_t run(std::span<const Chip> start, Fn&& on_state)
    {
        arena_.assign(start.begin(), start.end());
        seen_.clear();
        seen_.insert(0);
        std::size_t head = 0;
        while (head < count()) {
            if (!on_state(state(head))) return count();
            for (Vertex v = 0; v < n_; ++v) {
                if (arena_[head * n_ + v] < degree_[v]) continue;
                const std::size_t at = arena_.size();
                arena_.resize(at + n_);
                for (std::size_t i = 0; i < n_; ++i) arena_[at + i] = arena_[head * n_ + i];
                arena_[at + v] -= degree_[v];
                for (Vertex w : g_.neighbors(v)) arena_[at + w] += 1;
                const std::size_t idx = at / n_;
                if (!seen_.insert(idx).second) {
                    arena_.resize(at);
                } else if (count() > max_states_) {
                    throw ResourceExceeded("reachability search exceeded " + std::to_string(max_states_) +
                                           " states");
                }
            }
            ++head;
        }
        return count();
    }

    std::size_t count() const noexcept { return arena_.size() / n_; }
    std::span<const Chip> state(std::size_t i) const { return {arena_.data() + i * n_, n_}; }

private:
    struct Hasher {
        const LegalBfs* self;
        std::size_t operator()(std::size_t i) const noexcept { return hash_state(self->state(i)); }
    };
    struct Equal {
        const LegalBfs* self;
        bool operator()(std::size_t a, std::size_t b) const noexcept
        {
            auto x = self->state(a);
            auto y = self->state(b);
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] != y[i]) return false;
            return true;
        }
    };

    const Graph& g_;
    std::size_t n_;
    std::uint64_t max_states_;
    std::vector<Chip> degree_;
    std::vector<Chip> arena_;
    std::unordered_set<std::size_t, Hasher, Equal> seen_;
};

inline std::vector<std::int64_t> to_int64_vector(std::span<const Integer> v)
{
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(x));
    return out;
}

}  // namespace chipfire::detail
