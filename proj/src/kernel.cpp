#include "sumprod/kernel.hpp"

#include "sumprod/number_theory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <vector>

namespace sumprod {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Keys buffered before a sort-and-merge flush.
constexpr std::size_t kPrimeChunk = std::size_t{1} << 22;
constexpr std::size_t kRationalChunk = std::size_t{1} << 19;

void radix_sort(std::vector<u64>& keys, std::vector<u64>& scratch, unsigned bits) {
    constexpr unsigned kDigit = 11;
    constexpr std::size_t kBuckets = std::size_t{1} << kDigit;
    scratch.resize(keys.size());
    std::array<std::size_t, kBuckets> offsets{};
    for (unsigned shift = 0; shift < bits; shift += kDigit) {
        offsets.fill(0);
        for (u64 k : keys) ++offsets[(k >> shift) & (kBuckets - 1)];
        std::size_t sum = 0;
        for (auto& c : offsets) {
            const std::size_t n = c;
            c = sum;
            sum += n;
        }
        for (u64 k : keys) scratch[offsets[(k >> shift) & (kBuckets - 1)]++] = k;
        keys.swap(scratch);
    }
}

template <class Key, class Less>
void merge_runs(std::vector<std::pair<Key, u64>>& runs, std::vector<std::pair<Key, u64>>& fresh,
                std::vector<std::pair<Key, u64>>& merged, Less less) {
    if (runs.empty()) {
        runs.swap(fresh);
        return;
    }
    merged.clear();
    merged.reserve(runs.size() + fresh.size());
    auto i = runs.begin();
    auto j = fresh.begin();
    while (i != runs.end() && j != fresh.end()) {
        if (less(i->first, j->first)) {
            merged.push_back(*i++);
        } else if (less(j->first, i->first)) {
            merged.push_back(*j++);
        } else {
            merged.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    merged.insert(merged.end(), i, runs.end());
    merged.insert(merged.end(), j, fresh.end());
    runs.swap(merged);
    fresh.clear();
}

// Residues relative to `offset`, radix-sorted and run-length merged.
class PrimeRuns {
public:
    void reset(u64 offset, unsigned bits) {
        offset_ = offset;
        bits_ = std::max(bits, 1u);
        buf_.clear();
        runs_.clear();
    }

    void push(u64 v) {
        buf_.push_back(v - offset_);
        if (buf_.size() >= kPrimeChunk) flush();
    }

    template <class Sink>
    void drain(Sink& sink) {
        flush();
        for (const auto& [k, c] : runs_) sink(k + offset_, c);
        runs_.clear();
    }

private:
    void flush() {
        if (buf_.empty()) return;
        radix_sort(buf_, scratch_, bits_);
        fresh_.clear();
        for (u64 k : buf_) {
            if (!fresh_.empty() && fresh_.back().first == k)
                ++fresh_.back().second;
            else
                fresh_.emplace_back(k, 1);
        }
        buf_.clear();
        merge_runs(runs_, fresh_, merged_, std::less<u64>{});
    }

    u64 offset_ = 0;
    unsigned bits_ = 1;
    std::vector<u64> buf_, scratch_;
    std::vector<std::pair<u64, u64>> runs_, fresh_, merged_;
};

class RationalRuns {
public:
    void push(const Elem& v) {
        buf_.push_back(v);
        if (buf_.size() >= kRationalChunk) flush();
    }

    template <class Sink>
    void drain(Sink& sink) {
        flush();
        for (const auto& [k, c] : runs_) sink(k, c);
        runs_.clear();
    }

private:
    void flush() {
        if (buf_.empty()) return;
        std::sort(buf_.begin(), buf_.end());
        fresh_.clear();
        for (const Elem& k : buf_) {
            if (!fresh_.empty() && fresh_.back().first == k)
                ++fresh_.back().second;
            else
                fresh_.emplace_back(k, 1);
        }
        buf_.clear();
        merge_runs(runs_, fresh_, merged_, std::less<Elem>{});
    }

    std::vector<Elem> buf_;
    std::vector<std::pair<Elem, u64>> runs_, fresh_, merged_;
};

// Right operand rewritten so that every op becomes add or mul.
struct Prepared {
    bool multiplicative = false;
    std::vector<Elem> rhs;
    u64 excluded = 0;
};

Prepared prepare(const ElemSet& a, const ElemSet& b, Op op) {
    const auto& f = b.field();
    Prepared out;
    out.multiplicative = !is_additive(op);
    out.rhs.reserve(b.size());
    switch (op) {
        case Op::add:
        case Op::mul:
            out.rhs.assign(b.begin(), b.end());
            break;
        case Op::sub:
            for (const auto& y : b) out.rhs.push_back(f.neg(y));
            break;
        case Op::div:
            for (const auto& y : b) {
                if (f.is_zero(y))
                    out.excluded = a.size();
                else
                    out.rhs.push_back(f.inv(y));
            }
            break;
    }
    std::sort(out.rhs.begin(), out.rhs.end());
    return out;
}

inline u64 mul_residue(u64 x, u64 y, u64 p) noexcept {
    if (p <= 0xffffffffULL) return x * y % p;
    return nt::mul_mod(x, y, p);
}

// Products have no interval structure, so one pass over all pairs scatters
// them into per-range buckets; blocks of ranges bound the buffered keys.
template <class Key, class Sink>
void scatter_products(const std::vector<u64>& xs, const std::vector<u64>& ys, u64 p, u64 ranges, u64 width,
                      PrimeRuns& acc, Sink& sink) {
    constexpr u128 kBlockKeys = u128{1} << 27;
    const u128 total = static_cast<u128>(xs.size()) * ys.size();
    const u64 blocks = static_cast<u64>((total + kBlockKeys - 1) / kBlockKeys);
    const u64 per_block = (ranges + blocks - 1) / blocks;
    std::vector<std::vector<Key>> buckets;
    for (u64 r0 = 0; r0 < ranges; r0 += per_block) {
        const u64 r1 = std::min(ranges, r0 + per_block);
        const u64 lo = r0 * width;
        const u64 hi = std::min(p, r1 * width);
        if (lo >= hi) break;
        buckets.assign(r1 - r0, {});
        for (u64 x : xs)
            for (u64 y : ys) {
                const u64 v = mul_residue(x, y, p);
                if (v >= lo && v < hi) buckets[(v - lo) / width].push_back(static_cast<Key>(v));
            }
        for (u64 r = r0; r < r1; ++r) {
            const u64 blo = r * width;
            if (blo >= p) break;
            const u64 bhi = std::min(p, blo + width);
            acc.reset(blo, static_cast<unsigned>(std::bit_width(bhi - blo - 1)));
            auto& bucket = buckets[r - r0];
            for (Key v : bucket) acc.push(v);
            std::vector<Key>().swap(bucket);
            acc.drain(sink);
        }
    }
}

template <class Sink>
void prime_stream(const std::vector<u64>& xs, const std::vector<u64>& ys, bool multiplicative, u64 p, Sink& sink) {
    if (xs.empty() || ys.empty()) return;
    const u128 total = static_cast<u128>(xs.size()) * ys.size();
    u64 ranges = 1;
    if (total > kPrimeChunk) ranges = static_cast<u64>((2 * total + kPrimeChunk - 1) / kPrimeChunk);
    ranges = std::min(ranges, p);
    const u64 width = p / ranges + (p % ranges != 0);

    PrimeRuns acc;
    if (multiplicative && ranges > 1) {
        if (p <= 0xffffffffULL)
            scatter_products<std::uint32_t>(xs, ys, p, ranges, width, acc, sink);
        else
            scatter_products<u64>(xs, ys, p, ranges, width, acc, sink);
        return;
    }
    for (u64 lo = 0; lo < p; lo += width) {
        const u64 hi = std::min(p, lo + width);
        acc.reset(lo, static_cast<unsigned>(std::bit_width(hi - lo - 1)));
        if (!multiplicative) {
            const u64 len = hi - lo;
            for (u64 x : xs) {
                // y with x + y mod p in [lo, hi) form the cyclic interval [lo - x, hi - x).
                const u64 start = (lo + p - x) % p;
                auto take = [&](u64 from, u64 to) {
                    auto it = std::lower_bound(ys.begin(), ys.end(), from);
                    const auto stop = std::lower_bound(it, ys.end(), to);
                    for (; it != stop; ++it) {
                        u64 v = x + *it;
                        if (v >= p) v -= p;
                        acc.push(v);
                    }
                };
                if (start + len <= p) {
                    take(start, start + len);
                } else {
                    take(start, p);
                    take(0, start + len - p);
                }
            }
        } else {
            for (u64 x : xs)
                for (u64 y : ys) acc.push(mul_residue(x, y, p));
        }
        acc.drain(sink);
    }
}

template <class Sink>
void rational_stream(const GroundField& f, const ElemSet& a, const std::vector<Elem>& ys, bool multiplicative,
                     Sink& sink) {
    RationalRuns acc;
    for (const Elem& x : a) {
        if (multiplicative) {
            for (const Elem& y : ys) acc.push(f.mul(x, y));
        } else {
            for (const Elem& y : ys) acc.push(f.add(x, y));
        }
    }
    acc.drain(sink);
}

std::vector<u64> residues(std::span<const Elem> elems) {
    std::vector<u64> out;
    out.reserve(elems.size());
    for (const auto& e : elems) out.push_back(static_cast<u64>(e.num));
    return out;
}

template <class PrimeSink, class RationalSink>
PairTally run(const ElemSet& a, const ElemSet& b, Op op, PrimeSink prime_sink, RationalSink rational_sink) {
    require_same_field(a, b);
    Prepared prep = prepare(a, b, op);
    PairTally tally;
    tally.excluded = prep.excluded;
    tally.pairs = static_cast<u64>(a.size()) * prep.rhs.size();
    const auto& f = a.field();
    if (f.is_prime()) {
        prime_stream(residues(a.elems()), residues(prep.rhs), prep.multiplicative, f.modulus(), prime_sink);
    } else {
        rational_stream(f, a, prep.rhs, prep.multiplicative, rational_sink);
    }
    return tally;
}

}  // namespace

void require_same_field(const ElemSet& a, const ElemSet& b) {
    if (!(a.field() == b.field()))
        throw std::invalid_argument("field mismatch: " + a.field().name() + " vs " + b.field().name());
}

PairTally stream_multiplicities(const ElemSet& a, const ElemSet& b, Op op, const ValueCountSink& sink) {
    return run(
        a, b, op, [&](u64 v, u64 c) { sink(Elem{static_cast<Int>(v), 1}, c); },
        [&](const Elem& v, u64 c) { sink(v, c); });
}

PairTally stream_counts(const ElemSet& a, const ElemSet& b, Op op, const CountSink& sink) {
    return run(
        a, b, op, [&](u64, u64 c) { sink(c); }, [&](const Elem&, u64 c) { sink(c); });
}

}  // namespace sumprod
