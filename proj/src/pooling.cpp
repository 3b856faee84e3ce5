#include "weyl/pooling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace {

int half_width(int m, const char* what) {
    if (m < 2 || m % 2 != 0)
        throw UsageError(std::string(what) + ": bit width must be even, got " +
                         std::to_string(m));
    return m / 2;
}

std::uint32_t swap_halves(std::uint32_t v, int r) {
    const std::uint32_t mask = (1u << r) - 1;
    return ((v & mask) << r) | (v >> r);
}

}  // namespace

IndexMap rot90_map(int m) {
    const int r = half_width(m, "rot90");
    const std::uint32_t n = 1u << m;
    IndexMap map;
    map.name = "rot90";
    map.m = m;
    map.a_perm.resize(n);
    map.b_perm.resize(n);
    map.sign_by_b.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        map.a_perm[v] = swap_halves(v, r);
        map.b_perm[v] = swap_halves(v, r);
        map.sign_by_b[v] = (std::popcount(v >> r) & 1) ? -1 : 1;
    }
    return map;
}

IndexMap vtrans_map(int m) {
    const int r = half_width(m, "vtrans");
    if (r < 2)
        throw UsageError("vtrans: needs at least 4x4 tiles (bit width >= 4), got " +
                         std::to_string(m));
    const std::uint32_t n = 1u << m;
    IndexMap map;
    map.name = "vtrans";
    map.m = m;
    map.a_perm.resize(n);
    map.b_perm.resize(n);
    map.sign_by_b.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        // Top two bits of the row half carry the quarter shift.
        map.a_perm[v] = v ^ (((v >> (r - 2)) & 1u) << (r - 1));
        map.b_perm[v] = v ^ (((v >> (r - 1)) & 1u) << (r - 2));
        map.sign_by_b[v] = ((v >> (r - 2)) & 1u) ? -1 : 1;
    }
    return map;
}

IndexMap compose(const IndexMap& first, const IndexMap& then, const std::string& name) {
    if (first.m != then.m) throw UsageError("compose: bit width mismatch");
    const std::uint32_t n = 1u << first.m;
    IndexMap map;
    map.name = name;
    map.m = first.m;
    map.a_perm.resize(n);
    map.b_perm.resize(n);
    map.sign_by_b.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        map.a_perm[v] = then.a_perm[first.a_perm[v]];
        map.b_perm[v] = then.b_perm[first.b_perm[v]];
        map.sign_by_b[v] =
            static_cast<std::int8_t>(first.sign_by_b[v] * then.sign_by_b[first.b_perm[v]]);
    }
    return map;
}

IndexMap htrans_map(int m) {
    const IndexMap rot = rot90_map(m);
    return compose(compose(rot, vtrans_map(m), "tmp"), rot, "htrans");
}

std::vector<std::uint32_t> rotation_permutation(int m) {
    const int r = half_width(m, "rotation permutation");
    const std::uint32_t n = 1u << m;
    const std::uint32_t row_mask = (1u << r) - 1;
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t col = v >> r, row = v & row_mask;
        // (col, row) -> (~row, col): the new column is the complemented
        // old row, the new row the old column.
        perm[v] = ((row ^ row_mask) << r) | col;
    }
    return perm;
}

std::vector<std::uint32_t> vshift_permutation(int m) {
    const int r = half_width(m, "vertical shift permutation");
    if (r < 2) throw UsageError("vertical shift permutation: bit width must be >= 4");
    const std::uint32_t n = 1u << m;
    const std::uint32_t row_mask = (1u << r) - 1;
    const std::uint32_t quarter = 1u << (r - 2);
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t row = v & row_mask;
        perm[v] = (v & ~row_mask) | ((row + quarter) & row_mask);
    }
    return perm;
}

std::vector<IndexMap> symmetry_generators(int m) {
    return {rot90_map(m), vtrans_map(m), htrans_map(m)};
}

namespace {

// Connected components of {0..n-1} under a set of permutation tables.
// Classes come out with sorted members, ordered by minimal member.
std::vector<std::vector<std::uint32_t>> orbit_partition(
    std::uint32_t n, const std::vector<const std::vector<std::uint32_t>*>& perms) {
    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<bool> seen(n, false);
    for (std::uint32_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<std::uint32_t> members;
        std::vector<std::uint32_t> frontier{start};
        seen[start] = true;
        while (!frontier.empty()) {
            const std::uint32_t v = frontier.back();
            frontier.pop_back();
            members.push_back(v);
            for (const auto* perm : perms) {
                const std::uint32_t w = (*perm)[v];
                if (!seen[w]) {
                    seen[w] = true;
                    frontier.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        classes.push_back(std::move(members));
    }
    // Scanning from ascending start points already yields minimal-member
    // order; keep the sort as an explicit guarantee.
    std::sort(classes.begin(), classes.end(),
              [](const auto& u, const auto& v) { return u.front() < v.front(); });
    return classes;
}

void validate_generator(const IndexMap& g, int m) {
    const std::uint32_t n = 1u << m;
    if (g.m != m || g.a_perm.size() != n || g.b_perm.size() != n || g.sign_by_b.size() != n)
        throw InternalError("index map '" + g.name + "' does not match bit width " +
                            std::to_string(m));
    std::vector<bool> hit_a(n, false), hit_b(n, false);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.a_perm[v] >= n || hit_a[g.a_perm[v]])
            throw InternalError("index map '" + g.name + "' is not a bijection on a");
        if (g.b_perm[v] >= n || hit_b[g.b_perm[v]])
            throw InternalError("index map '" + g.name + "' is not a bijection on b");
        hit_a[g.a_perm[v]] = true;
        hit_b[g.b_perm[v]] = true;
    }
    // Conjugation by a permutation cannot change whether D(a,b) is
    // symmetric, so the overlap parity must be conserved.
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (bit_dot(a, b) != bit_dot(g.a_perm[a], g.b_perm[b]))
                throw InternalError("index map '" + g.name + "' breaks overlap parity at a=" +
                                    std::to_string(a) + " b=" + std::to_string(b));
}

std::uint64_t fnv1a_partition_hash(const ClassPartition& p) {
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(p.m));
    mix(p.classes.size());
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
        mix(p.classes[c].size());
        for (std::uint64_t flat : p.classes[c]) mix(flat);
        mix(p.retained[c] ? 1 : 0);
    }
    return h;
}

}  // namespace

std::size_t ClassPartition::retained_count() const {
    return static_cast<std::size_t>(std::count(retained.begin(), retained.end(), true));
}

ClassPartition build_partition(int m, const std::vector<IndexMap>& generators) {
    if (m < 1 || m > BitTuple::kMaxBits / 2)
        throw UsageError("partition: bit width " + std::to_string(m) + " out of range");
    const std::uint32_t n = 1u << m;
    for (const IndexMap& g : generators) validate_generator(g, m);

    std::vector<const std::vector<std::uint32_t>*> a_perms, b_perms;
    for (const IndexMap& g : generators) {
        a_perms.push_back(&g.a_perm);
        b_perms.push_back(&g.b_perm);
    }

    ClassPartition p;
    p.m = m;
    p.a_classes = orbit_partition(n, a_perms);
    p.b_classes = orbit_partition(n, b_perms);

    // Cross the two partitions. Iterating a-classes then b-classes in
    // minimal-member order already produces ascending minimal flat
    // indices, since flat = (a << m) | b is a-major.
    p.class_of_flat.assign(std::uint64_t{n} * n, -1);
    for (const auto& ac : p.a_classes)
        for (const auto& bc : p.b_classes) {
            std::vector<std::uint64_t> members;
            members.reserve(ac.size() * bc.size());
            bool any_even_overlap = false;
            for (std::uint32_t a : ac)
                for (std::uint32_t b : bc) {
                    members.push_back((std::uint64_t{a} << m) | b);
                    if (bit_dot(a, b) == 0) any_even_overlap = true;
                }
            std::sort(members.begin(), members.end());
            const auto id = static_cast<std::int32_t>(p.classes.size());
            for (std::uint64_t flat : members) p.class_of_flat[flat] = id;
            const bool zero_a = ac.size() == 1 && ac.front() == 0;
            p.retained.push_back(any_even_overlap && !zero_a);
            p.classes.push_back(std::move(members));
        }

    p.partition_id = fnv1a_partition_hash(p);
    return p;
}

ClassPartition default_partition(int m) { return build_partition(m, symmetry_generators(m)); }

Descriptor pooled_descriptor(const WeylSpectrum& s, const ClassPartition& p,
                             bool include_structural_zeros) {
    if (s.m != p.m)
        throw UsageError("descriptor: spectrum width " + std::to_string(s.m) +
                         " does not match partition width " + std::to_string(p.m));
    Descriptor d;
    d.partition_id = p.partition_id;
    d.values.reserve(p.retained_count());
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
        if (!p.retained[c]) continue;
        double sum = 0.0;
        std::size_t count = 0;
        for (std::uint64_t flat : p.classes[c]) {
            const std::uint32_t a = static_cast<std::uint32_t>(flat >> p.m);
            const std::uint32_t b = static_cast<std::uint32_t>(flat) & ((1u << p.m) - 1);
            if (!include_structural_zeros && bit_dot(a, b) != 0) continue;
            sum += std::abs(s.coeffs[flat]);
            ++count;
        }
        d.values.push_back(sum / static_cast<double>(count));
    }
    return d;
}

Descriptor patch_descriptor(std::span<const double> patch, const ClassPartition& p,
                            bool include_structural_zeros) {
    const std::size_t side =
        static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(patch.size()))));
    if (side == 0 || side * side != patch.size() || side % 4 != 0)
        throw UsageError("patch descriptor: tile must be square with side a multiple of 4");
    if (p.m != 4) throw UsageError("patch descriptor: partition must have bit width 4");

    const std::size_t tiles = side / 4;
    Descriptor mean;
    mean.partition_id = p.partition_id;
    mean.values.assign(p.retained_count(), 0.0);
    std::vector<double> y(16);
    for (std::size_t tile_row = 0; tile_row < tiles; ++tile_row)
        for (std::size_t tile_col = 0; tile_col < tiles; ++tile_col) {
            // Columnwise vectorization: index = 4 * column + row.
            for (std::size_t col = 0; col < 4; ++col)
                for (std::size_t row = 0; row < 4; ++row)
                    y[col * 4 + row] =
                        patch[(tile_row * 4 + row) * side + (tile_col * 4 + col)];
            const Descriptor d =
                pooled_descriptor(weyl_fast(Signal(4, y)), p, include_structural_zeros);
            for (std::size_t i = 0; i < mean.values.size(); ++i)
                mean.values[i] += d.values[i];
        }
    for (double& v : mean.values) v /= static_cast<double>(tiles * tiles);
    return mean;
}

std::string partition_to_json(const ClassPartition& p) {
    nlohmann::json j;
    j["m"] = p.m;
    char id[17];
    std::snprintf(id, sizeof id, "%016llx", static_cast<unsigned long long>(p.partition_id));
    j["partition_id"] = id;
    j["a_classes"] = p.a_classes;
    j["b_classes"] = p.b_classes;
    j["retained_count"] = p.retained_count();

    auto classes = nlohmann::json::array();
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
        auto members = nlohmann::json::array();
        for (std::uint64_t flat : p.classes[c]) {
            const auto a = static_cast<std::uint32_t>(flat >> p.m);
            const auto b = static_cast<std::uint32_t>(flat) & ((1u << p.m) - 1);
            members.push_back({a, b});
        }
        classes.push_back({{"members", std::move(members)}, {"retained", bool(p.retained[c])}});
    }
    j["classes"] = std::move(classes);
    return j.dump(2) + "\n";
}

}  // namespace weyl
