#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "colorers/colorer.hpp"

namespace dyncolor {

// High point h_i = N_R^{i/d} - N_R^{(i-1)/d}, floored, at least 1.
std::uint64_t bucket_capacity(int i, int d, std::uint64_t nr);

// Two-level variant: per-bucket sub-bucket count ceil(N_R^{1/d}) (the
// designated empty reset bucket counts), each of capacity ceil(N_R^{(i-1)/d}).
std::uint32_t sub_bucket_count(int d, std::uint64_t nr);
std::uint64_t sub_bucket_capacity(int i, int d, std::uint64_t nr);

struct BucketOptions {
    int d = 2;
    std::uint64_t nr_init = 16;   // capacity base before the first reset
    bool two_level = false;       // false = A1, true = A2
};

// Trade-off colorers over a bucket partition V_1..V_d with disjoint palette
// blocks. A1 keeps one block per bucket and statically recolors the whole
// receiving bucket whenever a cascade lands in it. A2 gives every sub-bucket
// its own block, so an arriving group only needs recoloring against itself;
// the designated empty reset sub-bucket receives it.
//
// Edge insertions are factored into vertex updates (delete one endpoint,
// re-insert it with the extra neighbor). Deletions leave holes; only
// insertions move vertices.
class BucketColorer : public Colorer {
public:
    explicit BucketColorer(BucketOptions opt);

    void attach(DynamicGraph& g) override;
    RecolorReport apply(DynamicGraph& g, const UpdateEvent& e) override;
    const Coloring& coloring() const override { return chi_; }
    std::string name() const override { return opt_.two_level ? "a2" : "a1"; }
    std::uint64_t work() const override { return work_; }
    void stats(json& out) const override;
    void violation_counts(json& out) const override;

    std::uint64_t nr() const { return nr_; }
    std::uint64_t reset_count() const { return resets_; }
    std::uint64_t high_point(int i) const { return buckets_[i].high; }
    int bucket_of(VertexId v) const {
        return v < vertex_bucket_.size() ? vertex_bucket_[v] : -1;
    }
    int sub_bucket_of(VertexId v) const {
        return v < vertex_sub_.size() ? vertex_sub_[v] : -1;
    }

    // Structural audit for tests: high points, reset-bucket availability,
    // block-local colors, disjointness by construction.
    std::vector<std::string> check_invariants() const;

private:
    struct SubBucket {
        SlotSet members;
        Color base = 0;        // palette block (base, base + cap]
        std::uint64_t cap = 0;
    };
    struct Bucket {
        SlotSet members;
        std::uint64_t high = 0;   // h_i
        Color base = 0;           // A1 block (base, base + high]
        std::vector<SubBucket> subs;
        std::uint64_t sub_cap = 0;
    };

    void rebuild_hierarchy(std::uint64_t nr);
    void full_reset(DynamicGraph& g, RecolorReport& report);
    // Moves all of bucket i into bucket i+1 (resetting past the top),
    // recoloring per variant. Returns false when a full reset happened.
    bool cascade_from(DynamicGraph& g, int i, RecolorReport& report);
    void place_new_vertex(DynamicGraph& g, VertexId v, RecolorReport& report);
    void remove_vertex(VertexId v);
    int first_empty_sub(const Bucket& b) const;
    int empty_sub_count(const Bucket& b) const;
    Color greedy_in_block(const DynamicGraph& g, VertexId v, Color base, std::uint64_t cap,
                          const SlotSet& same_block);
    void recolor_group_into(DynamicGraph& g, const std::vector<VertexId>& group, int bucket_idx,
                            RecolorReport& report);

    BucketOptions opt_;
    Coloring chi_;
    std::vector<Bucket> buckets_;
    std::uint64_t nr_ = 0;
    std::vector<int> vertex_bucket_;  // -1 when not placed
    std::vector<int> vertex_sub_;
    std::uint64_t work_ = 0;
    std::uint64_t resets_ = 0;
    std::uint64_t recolorings_total_ = 0;
    std::uint64_t inserts_total_ = 0;
    std::uint64_t block_exhausted_ = 0;  // must stay 0
    std::vector<std::uint64_t> scratch_;  // generation-stamped used-color marks
    std::uint64_t scratch_gen_ = 0;
};

}  // namespace dyncolor
