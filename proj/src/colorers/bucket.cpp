#include "colorers/bucket.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace dyncolor {

namespace {

double real_pow(std::uint64_t nr, int num, int den) {
    return std::pow(static_cast<double>(nr), static_cast<double>(num) / den);
}

}  // namespace

std::uint64_t bucket_capacity(int i, int d, std::uint64_t nr) {
    const double h = real_pow(nr, i, d) - real_pow(nr, i - 1, d);
    const auto floored = static_cast<std::uint64_t>(std::floor(h + 1e-9));
    return std::max<std::uint64_t>(floored, 1);
}

std::uint32_t sub_bucket_count(int d, std::uint64_t nr) {
    return static_cast<std::uint32_t>(std::ceil(real_pow(nr, 1, d) - 1e-9));
}

std::uint64_t sub_bucket_capacity(int i, int d, std::uint64_t nr) {
    return static_cast<std::uint64_t>(std::ceil(real_pow(nr, i - 1, d) - 1e-9));
}

BucketColorer::BucketColorer(BucketOptions opt) : opt_(opt) {
    if (opt_.d < 1 || opt_.d > 24) throw ConfigError("bucket colorer needs 1 <= d <= 24");
    if (opt_.nr_init < 2) throw ConfigError("bucket colorer needs nr_init >= 2");
}

void BucketColorer::rebuild_hierarchy(std::uint64_t nr) {
    nr_ = nr;
    buckets_.assign(opt_.d, Bucket{});
    Color next_base = 0;
    for (int i = 1; i <= opt_.d; ++i) {
        Bucket& b = buckets_[i - 1];
        b.high = bucket_capacity(i, opt_.d, nr_);
        if (opt_.two_level) {
            const std::uint32_t subs = sub_bucket_count(opt_.d, nr_);
            b.sub_cap = sub_bucket_capacity(i, opt_.d, nr_);
            b.subs.assign(std::max<std::uint32_t>(subs, 2), SubBucket{});
            for (auto& sb : b.subs) {
                sb.cap = b.sub_cap;
                sb.base = next_base;
                next_base += static_cast<Color>(b.sub_cap);
            }
        } else {
            b.base = next_base;
            next_base += static_cast<Color>(b.high);
        }
    }
    chi_.ensure_palette(next_base);
    std::fill(vertex_bucket_.begin(), vertex_bucket_.end(), -1);
    std::fill(vertex_sub_.begin(), vertex_sub_.end(), -1);
}

void BucketColorer::attach(DynamicGraph& g) {
    vertex_bucket_.assign(g.num_ids(), -1);
    vertex_sub_.assign(g.num_ids(), -1);
    chi_.ensure_ids(g.num_ids());
    RecolorReport ignore;
    full_reset(g, ignore);
}

int BucketColorer::first_empty_sub(const Bucket& b) const {
    for (std::size_t j = 0; j < b.subs.size(); ++j) {
        if (b.subs[j].members.empty()) return static_cast<int>(j);
    }
    return -1;
}

int BucketColorer::empty_sub_count(const Bucket& b) const {
    int n = 0;
    for (const auto& sb : b.subs) {
        if (sb.members.empty()) ++n;
    }
    return n;
}

Color BucketColorer::greedy_in_block(const DynamicGraph& g, VertexId v, Color base,
                                     std::uint64_t cap, const SlotSet& same_block) {
    // smallest block color not used by a neighbor sharing the block
    ++scratch_gen_;
    if (scratch_.size() < cap) scratch_.resize(cap, 0);
    for (VertexId w : g.neighbors(v)) {
        ++work_;
        if (w == v || !same_block.contains(w)) continue;
        const Color c = chi_.color(w);
        if (c > base && c <= base + cap) scratch_[c - base - 1] = scratch_gen_;
    }
    for (std::uint64_t k = 0; k < cap; ++k) {
        ++work_;
        if (scratch_[k] != scratch_gen_) return base + static_cast<Color>(k) + 1;
    }
    ++block_exhausted_;
    throw InvariantError("bucket palette block exhausted at vertex " + std::to_string(v));
}

void BucketColorer::recolor_group_into(DynamicGraph& g, const std::vector<VertexId>& group,
                                       int bucket_idx, RecolorReport& report) {
    Bucket& b = buckets_[bucket_idx];
    if (opt_.two_level) {
        const int j = first_empty_sub(b);
        if (j < 0) throw InvariantError("no empty reset sub-bucket available");
        SubBucket& sb = b.subs[j];
        for (VertexId v : group) {
            sb.members.insert(v);
            b.members.insert(v);
            vertex_bucket_[v] = bucket_idx;
            vertex_sub_[v] = j;
        }
        // arriving vertices only need colors proper against each other
        for (VertexId v : group) {
            chi_.set(v, greedy_in_block(g, v, sb.base, sb.cap, sb.members));
            report.recolored.push_back(v);
            ++recolorings_total_;
        }
    } else {
        for (VertexId v : group) {
            b.members.insert(v);
            vertex_bucket_[v] = bucket_idx;
        }
        // the whole receiving bucket is recolored from scratch
        std::vector<VertexId> all(b.members.begin(), b.members.end());
        std::sort(all.begin(), all.end());
        for (VertexId v : all) chi_.clear(v);
        for (VertexId v : all) {
            chi_.set(v, greedy_in_block(g, v, b.base, b.high, b.members));
            report.recolored.push_back(v);
            ++recolorings_total_;
        }
    }
}

bool BucketColorer::cascade_from(DynamicGraph& g, int i, RecolorReport& report) {
    if (i + 1 >= opt_.d) {
        full_reset(g, report);
        return false;
    }
    std::vector<VertexId> group(buckets_[i].members.begin(), buckets_[i].members.end());
    std::sort(group.begin(), group.end());

    const bool overflow = buckets_[i + 1].members.size() + group.size() > buckets_[i + 1].high;
    const bool no_room = opt_.two_level && empty_sub_count(buckets_[i + 1]) < 2;
    if (overflow || no_room) {
        if (!cascade_from(g, i + 1, report)) return false;  // reset rebuilt everything
    }

    // clear the source bucket
    Bucket& src = buckets_[i];
    for (VertexId v : group) {
        src.members.erase(v);
        if (opt_.two_level) {
            src.subs[vertex_sub_[v]].members.erase(v);
            vertex_sub_[v] = -1;
        }
        vertex_bucket_[v] = -1;
    }
    recolor_group_into(g, group, i + 1, report);
    return true;
}

void BucketColorer::place_new_vertex(DynamicGraph& g, VertexId v, RecolorReport& report) {
    Bucket& b0 = buckets_[0];
    const bool overflow = b0.members.size() + 1 > b0.high;
    const bool no_room = opt_.two_level && empty_sub_count(b0) < 2;
    if (overflow || no_room) {
        if (!cascade_from(g, 0, report)) {
            return;  // full reset placed and colored v along with everyone
        }
    }
    Bucket& b = buckets_[0];
    if (opt_.two_level) {
        const int j = first_empty_sub(b);
        if (j < 0) throw InvariantError("no empty sub-bucket in V_1");
        SubBucket& sb = b.subs[j];
        sb.members.insert(v);
        b.members.insert(v);
        vertex_bucket_[v] = 0;
        vertex_sub_[v] = j;
        chi_.set(v, greedy_in_block(g, v, sb.base, sb.cap, sb.members));
    } else {
        b.members.insert(v);
        vertex_bucket_[v] = 0;
        chi_.set(v, greedy_in_block(g, v, b.base, b.high, b.members));
    }
    report.recolored.push_back(v);
    ++recolorings_total_;
}

void BucketColorer::full_reset(DynamicGraph& g, RecolorReport& report) {
    const auto live = g.live_vertices();
    std::uint64_t nr = std::max<std::uint64_t>(opt_.nr_init, 2 * std::max<std::size_t>(live.size(), 1));
    nr = std::max<std::uint64_t>(nr, 1ull << opt_.d);  // keeps every h_i >= 1 honest
    auto capacity_of = [&](std::uint64_t base) {
        std::uint64_t c = 0;
        for (int i = 1; i <= opt_.d; ++i) c += bucket_capacity(i, opt_.d, base);
        return c;
    };
    while (capacity_of(nr) < live.size() + 1) nr *= 2;

    for (VertexId v : live) chi_.clear(v);
    rebuild_hierarchy(nr);
    ++resets_;

    // redistribute top-down so low buckets keep room for future cascades
    std::size_t next = 0;
    for (int i = opt_.d - 1; i >= 0 && next < live.size(); --i) {
        Bucket& b = buckets_[i];
        std::uint64_t take = std::min<std::uint64_t>(b.high, live.size() - next);
        if (opt_.two_level) {
            // left-packed, keeping the last sub-bucket empty as the reset bucket
            std::size_t j = 0;
            while (take > 0 && j + 1 < b.subs.size()) {
                SubBucket& sb = b.subs[j];
                const std::uint64_t chunk = std::min<std::uint64_t>(sb.cap, take);
                for (std::uint64_t k = 0; k < chunk; ++k) {
                    const VertexId v = live[next++];
                    sb.members.insert(v);
                    b.members.insert(v);
                    vertex_bucket_[v] = i;
                    vertex_sub_[v] = static_cast<int>(j);
                }
                for (VertexId v : sb.members.items()) {
                    chi_.set(v, greedy_in_block(g, v, sb.base, sb.cap, sb.members));
                    report.recolored.push_back(v);
                    ++recolorings_total_;
                }
                take -= chunk;
                ++j;
            }
        } else {
            for (std::uint64_t k = 0; k < take; ++k) {
                const VertexId v = live[next++];
                b.members.insert(v);
                vertex_bucket_[v] = i;
            }
            std::vector<VertexId> all(b.members.begin(), b.members.end());
            std::sort(all.begin(), all.end());
            for (VertexId v : all) {
                chi_.set(v, greedy_in_block(g, v, b.base, b.high, b.members));
                report.recolored.push_back(v);
                ++recolorings_total_;
            }
        }
    }
    if (next < live.size()) throw InvariantError("reset capacity undersized");
}

void BucketColorer::remove_vertex(VertexId v) {
    const int bi = vertex_bucket_[v];
    if (bi >= 0) {
        buckets_[bi].members.erase(v);
        if (opt_.two_level && vertex_sub_[v] >= 0) {
            buckets_[bi].subs[vertex_sub_[v]].members.erase(v);
        }
    }
    vertex_bucket_[v] = -1;
    vertex_sub_[v] = -1;
    chi_.clear(v);
}

RecolorReport BucketColorer::apply(DynamicGraph& g, const UpdateEvent& e) {
    RecolorReport report;
    switch (e.kind) {
        case UpdateKind::EdgeInsert: {
            report.conflict = chi_.color(e.u) != kNoColor && chi_.color(e.u) == chi_.color(e.v);
            // factor the edge insertion into vertex updates on the cheaper endpoint
            VertexId x = e.u, y = e.v;
            if (g.degree(y) < g.degree(x) || (g.degree(y) == g.degree(x) && y < x)) std::swap(x, y);
            const auto ops = g.simulate_edge_insert_as_vertex_ops(x, y);
            for (const UpdateEvent& op : ops) {
                if (op.kind == UpdateKind::VertexDelete) {
                    remove_vertex(op.u);
                    g.apply(op);
                } else {
                    g.apply(op);
                    if (op.u >= vertex_bucket_.size()) {
                        vertex_bucket_.resize(g.num_ids(), -1);
                        vertex_sub_.resize(g.num_ids(), -1);
                    }
                    chi_.ensure_ids(g.num_ids());
                    ++inserts_total_;
                    place_new_vertex(g, op.u, report);
                }
            }
            break;
        }
        case UpdateKind::EdgeDelete:
            g.apply(e);  // deletions never corrupt the coloring
            break;
        case UpdateKind::VertexInsert:
            g.apply(e);
            vertex_bucket_.resize(g.num_ids(), -1);
            vertex_sub_.resize(g.num_ids(), -1);
            chi_.ensure_ids(g.num_ids());
            ++inserts_total_;
            place_new_vertex(g, e.u, report);
            break;
        case UpdateKind::VertexDelete:
            remove_vertex(e.u);
            g.apply(e);
            break;
    }
    return report;
}

void BucketColorer::stats(json& out) const {
    json b = json::object();
    b["nr"] = nr_;
    b["resets"] = resets_;
    b["vertex_inserts"] = inserts_total_;
    b["recolorings"] = recolorings_total_;
    json highs = json::array();
    for (const auto& bucket : buckets_) highs.push_back(bucket.high);
    b["high_points"] = highs;
    out["bucket"] = b;
}

void BucketColorer::violation_counts(json& out) const {
    out["bucket_block_exhausted"] = block_exhausted_;
}

std::vector<std::string> BucketColorer::check_invariants() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
        const Bucket& b = buckets_[i];
        if (b.members.size() > b.high) {
            out.push_back("bucket " + std::to_string(i + 1) + " above high point");
        }
        if (opt_.two_level) {
            if (empty_sub_count(b) < 1) {
                out.push_back("bucket " + std::to_string(i + 1) + " has no empty reset sub-bucket");
            }
            std::size_t total = 0;
            for (const auto& sb : b.subs) {
                total += sb.members.size();
                if (sb.members.size() > sb.cap) {
                    out.push_back("sub-bucket above capacity in bucket " + std::to_string(i + 1));
                }
                for (VertexId v : sb.members.items()) {
                    const Color c = chi_.color(v);
                    if (c <= sb.base || c > sb.base + sb.cap) {
                        out.push_back("vertex " + std::to_string(v) + " colored outside its block");
                    }
                }
            }
            if (total != b.members.size()) {
                out.push_back("bucket/sub-bucket membership mismatch at " + std::to_string(i + 1));
            }
        } else {
            for (VertexId v : b.members.items()) {
                const Color c = chi_.color(v);
                if (c <= b.base || c > b.base + b.high) {
                    out.push_back("vertex " + std::to_string(v) + " colored outside its block");
                }
            }
        }
    }
    return out;
}

}  // namespace dyncolor
