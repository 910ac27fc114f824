#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace keqa {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Box3 = Eigen::AlignedBox3d;
using Box2 = Eigen::AlignedBox2d;

inline Box3 box_from_center(const Vec3& center, const Vec3& size) {
    return Box3(center - size / 2.0, center + size / 2.0);
}

inline Box2 footprint(const Box3& b) {
    return Box2(b.min().head<2>(), b.max().head<2>());
}

inline double box_distance(const Box3& a, const Box3& b) {
    return std::sqrt(a.squaredExteriorDistance(b));
}

inline double footprint_distance(const Box3& a, const Box3& b) {
    return std::sqrt(footprint(a).squaredExteriorDistance(footprint(b)));
}

// Strictly positive overlap (touching faces do not count).
inline bool boxes_overlap(const Box3& a, const Box3& b) {
    for (int k = 0; k < 3; ++k) {
        if (a.max()[k] <= b.min()[k] || b.max()[k] <= a.min()[k]) return false;
    }
    return true;
}

inline bool footprints_overlap(const Box3& a, const Box3& b) {
    for (int k = 0; k < 2; ++k) {
        if (a.max()[k] <= b.min()[k] || b.max()[k] <= a.min()[k]) return false;
    }
    return true;
}

// Uniform voxelization of an axis-aligned room volume anchored at the origin.
struct GridSpec {
    double resolution = 0.05;
    Vec3i dims = Vec3i::Zero();

    GridSpec() = default;
    GridSpec(double res, const Vec3& extent)
        : resolution(res),
          dims(static_cast<int>(std::ceil(extent.x() / res - 1e-9)),
               static_cast<int>(std::ceil(extent.y() / res - 1e-9)),
               static_cast<int>(std::ceil(extent.z() / res - 1e-9))) {}

    std::size_t cell_count() const {
        return static_cast<std::size_t>(dims.x()) * dims.y() * dims.z();
    }
    bool in_bounds(const Vec3i& c) const {
        return c.x() >= 0 && c.y() >= 0 && c.z() >= 0 && c.x() < dims.x() &&
               c.y() < dims.y() && c.z() < dims.z();
    }
    Vec3i coord_of(const Vec3& p) const {
        return Vec3i(static_cast<int>(std::floor(p.x() / resolution)),
                     static_cast<int>(std::floor(p.y() / resolution)),
                     static_cast<int>(std::floor(p.z() / resolution)));
    }
    Vec3 center_of(const Vec3i& c) const {
        return (c.cast<double>() + Vec3(0.5, 0.5, 0.5)) * resolution;
    }
    // Full-cell box of a voxel.
    Box3 cell_box(const Vec3i& c) const {
        Vec3 lo = c.cast<double>() * resolution;
        return Box3(lo, lo + Vec3::Constant(resolution));
    }
    std::size_t index_of(const Vec3i& c) const {
        return (static_cast<std::size_t>(c.z()) * dims.y() + c.y()) * dims.x() + c.x();
    }
    Vec3i coord_at(std::size_t idx) const {
        int x = static_cast<int>(idx % dims.x());
        int y = static_cast<int>((idx / dims.x()) % dims.y());
        int z = static_cast<int>(idx / (static_cast<std::size_t>(dims.x()) * dims.y()));
        return Vec3i(x, y, z);
    }
};

inline std::uint64_t pack_coord(const Vec3i& c) {
    auto u = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) & 0x1FFFFF; };
    return (u(c.x()) << 42) | (u(c.y()) << 21) | u(c.z());
}

inline Vec3i unpack_coord(std::uint64_t k) {
    auto s = [](std::uint64_t v) {
        std::int32_t x = static_cast<std::int32_t>(v & 0x1FFFFF);
        if (x & 0x100000) x |= ~0x1FFFFF;  // sign-extend
        return x;
    };
    return Vec3i(s(k >> 42), s(k >> 21), s(k));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic RNG with platform-independent draws and labeled substreams.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive bounds.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    double normal(double mean, double stddev) {
        double u1 = std::max(uniform(), 1e-12);
        double u2 = uniform();
        return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        if (v.empty()) throw std::runtime_error("RngStream::pick on empty vector");
        return v[static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    RngStream child(std::string_view label) const {
        return RngStream(splitmix64(seed_ ^ fnv1a(label)));
    }
    RngStream child(std::uint64_t salt) const { return RngStream(splitmix64(seed_ ^ salt)); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// ---- small string helpers used across parsing / normalization ----

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        if (p == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, p - start));
        start = p + 1;
    }
    return out;
}

inline std::vector<std::string> tokenize_words(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-') {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Dense bitset over grid cells; planner coverage math lives on these.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : bits_(n), words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    std::size_t size() const { return bits_; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    void or_with(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    }
    void and_with(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    }
    void subtract(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    }
    std::size_t and_count(const Bitset& other) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(words_[i] & other.words_[i]));
        return c;
    }
    // Count of bits in `other` not in this.
    std::size_t andnot_count(const Bitset& other) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(other.words_[i] & ~words_[i]));
        return c;
    }
    bool intersects(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                f(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace keqa
