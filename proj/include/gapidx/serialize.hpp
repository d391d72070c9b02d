#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "gapidx/error.hpp"
#include "gapidx/gap_count_index.hpp"
#include "gapidx/report_index.hpp"
#include "gapidx/zero_beta_index.hpp"

namespace gapidx {

enum class IndexKind : std::uint32_t { count = 0, report = 1, zero_beta = 2 };

using AnyIndex = std::variant<CountIndex, ReportIndex, ZeroBetaIndex>;

inline constexpr std::array<char, 8> kIndexMagic{'G', 'A', 'P', 'I', 'D', 'X', '\r', '\n'};
inline constexpr std::uint32_t kIndexVersion = 1;

namespace io {

/// Little-endian writer; every integer array is a u64 length then 4-byte items.
class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void u32(std::uint32_t x) {
        char b[4];
        for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((x >> (8 * k)) & 0xff);
        out_.write(b, 4);
    }
    void u64(std::uint64_t x) {
        u32(static_cast<std::uint32_t>(x));
        u32(static_cast<std::uint32_t>(x >> 32));
    }
    void i64(std::int64_t x) { u64(static_cast<std::uint64_t>(x)); }
    void bytes(const std::string& s) {
        u64(s.size());
        out_.write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    template <class T>
    void array(const std::vector<T>& v) {
        static_assert(sizeof(T) == 4);
        u64(v.size());
        for (auto x : v) u32(static_cast<std::uint32_t>(x));
    }
    void finish() {
        if (!out_) throw error(errc::io, "write failed");
    }

private:
    std::ostream& out_;
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::uint32_t u32() {
        unsigned char b[4];
        in_.read(reinterpret_cast<char*>(b), 4);
        if (!in_) throw error(errc::format, "truncated index file");
        return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
               static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
    }
    std::uint64_t u64() {
        const std::uint64_t lo = u32();
        return lo | static_cast<std::uint64_t>(u32()) << 32;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    std::uint64_t length() {
        const auto n = u64();
        if (n > (std::uint64_t{1} << 34)) throw error(errc::format, "implausible array length");
        return n;
    }
    std::string bytes() {
        std::string s(length(), '\0');
        in_.read(s.data(), static_cast<std::streamsize>(s.size()));
        if (!in_) throw error(errc::format, "truncated index file");
        return s;
    }
    template <class T>
    std::vector<T> array() {
        static_assert(sizeof(T) == 4);
        std::vector<T> v(length());
        for (auto& x : v) x = static_cast<T>(u32());
        return v;
    }

private:
    std::istream& in_;
};

inline void put(Writer& w, const TextIndex& ti) {
    w.bytes(std::string(ti.text()));
    w.array(ti.sa());
}

inline TextIndex get_text_index(Reader& r) {
    Text text(r.bytes());
    auto sa = r.array<std::int32_t>();
    if (!verify_suffix_array(text.view(), sa)) throw error(errc::format, "stored suffix array is invalid");
    return TextIndex::from_suffix_array(std::move(text), std::move(sa));
}

inline void put(Writer& w, const ClusterPartition& cp) {
    const auto raw = cp.to_raw();
    w.u32(static_cast<std::uint32_t>(raw.tau));
    for (const auto* a : {&raw.cluster_top, &raw.cluster_bottom, &raw.cluster_offsets, &raw.cluster_nodes,
                          &raw.owner, &raw.lower, &raw.local_rank, &raw.boundary}) {
        w.array(*a);
    }
}

inline ClusterPartition get_partition(Reader& r, std::int32_t nodes) {
    ClusterPartition::Raw raw;
    raw.tau = static_cast<std::int32_t>(r.u32());
    for (auto* a : {&raw.cluster_top, &raw.cluster_bottom, &raw.cluster_offsets, &raw.cluster_nodes, &raw.owner,
                    &raw.lower, &raw.local_rank, &raw.boundary}) {
        *a = r.array<std::int32_t>();
    }
    if (static_cast<std::int32_t>(raw.owner.size()) != nodes) throw error(errc::format, "partition size mismatch");
    return ClusterPartition::from_raw(std::move(raw));
}

inline void put(Writer& w, const BoundaryPairTable& t) {
    w.u32(static_cast<std::uint32_t>(t.cap()));
    w.u32(static_cast<std::uint32_t>(t.boundary_count()));
    w.array(t.raw());
}

inline void put(Writer& w, const MinDistTable& t) {
    w.u32(static_cast<std::uint32_t>(t.boundary_count()));
    w.array(t.raw());
}

template <class Table>
Table get_table(Reader& r);

template <>
inline BoundaryPairTable get_table<BoundaryPairTable>(Reader& r) {
    const auto cap = static_cast<std::int32_t>(r.u32());
    const auto count = static_cast<std::int32_t>(r.u32());
    return BoundaryPairTable::from_raw(cap, count, r.array<std::uint32_t>());
}

template <>
inline MinDistTable get_table<MinDistTable>(Reader& r) {
    const auto count = static_cast<std::int32_t>(r.u32());
    return MinDistTable::from_raw(count, r.array<std::uint32_t>());
}

inline void put(Writer& w, const Topology& t) {
    for (const auto* a : {&t.parent, &t.child_begin, &t.child_list, &t.lo, &t.hi, &t.leaf_pos, &t.leaf_at}) {
        w.array(*a);
    }
}

inline Topology get_topology(Reader& r) {
    Topology t;
    for (auto* a : {&t.parent, &t.child_begin, &t.child_list, &t.lo, &t.hi, &t.leaf_pos, &t.leaf_at}) {
        *a = r.array<std::int32_t>();
    }
    const auto n = t.parent.size();
    if (t.child_begin.size() != n + 1 || t.lo.size() != n || t.hi.size() != n || t.leaf_pos.size() != n) {
        throw error(errc::format, "topology arrays disagree in length");
    }
    return t;
}

template <class Layer>
void put(Writer& w, const InducedDecomposition<Layer>& dec) {
    w.i64(dec.options().small_cutoff);
    w.u32(static_cast<std::uint32_t>(dec.options().max_levels));
    w.u64(dec.nodes().size());
    for (const auto& d : dec.nodes()) {
        w.i64(d.interval.a);
        w.i64(d.interval.b);
        for (auto x : {d.level, d.tree, d.child[0], d.child[1]}) w.u32(static_cast<std::uint32_t>(x));
    }
    w.u64(dec.trees().size());
    for (const auto& t : dec.trees()) {
        w.i64(t.interval.a);
        w.i64(t.interval.b);
        w.u32(static_cast<std::uint32_t>(t.level));
        put(w, t.topo);
        w.array(t.global_id);
        w.array(t.succ[0]);
        w.array(t.succ[1]);
        put(w, t.cp);
        put(w, t.table);
    }
}

template <class Layer>
InducedDecomposition<Layer> get_decomposition(Reader& r, std::int32_t global_nodes) {
    using Dec = InducedDecomposition<Layer>;
    DecompositionOptions opt;
    opt.small_cutoff = r.i64();
    opt.max_levels = static_cast<std::int32_t>(r.u32());
    std::vector<typename Dec::Node> nodes(r.length());
    for (auto& d : nodes) {
        d.interval.a = r.i64();
        d.interval.b = r.i64();
        d.level = static_cast<std::int32_t>(r.u32());
        d.tree = static_cast<std::int32_t>(r.u32());
        d.child[0] = static_cast<std::int32_t>(r.u32());
        d.child[1] = static_cast<std::int32_t>(r.u32());
    }
    std::vector<InducedTree<Layer>> trees(r.length());
    for (auto& t : trees) {
        t.interval.a = r.i64();
        t.interval.b = r.i64();
        t.level = static_cast<std::int32_t>(r.u32());
        t.topo = get_topology(r);
        t.global_id = r.array<std::int32_t>();
        t.succ[0] = r.array<std::int32_t>();
        t.succ[1] = r.array<std::int32_t>();
        const auto size = t.topo.size();
        if (static_cast<std::int32_t>(t.global_id.size()) != size ||
            static_cast<std::int32_t>(t.succ[0].size()) != size ||
            static_cast<std::int32_t>(t.succ[1].size()) != size) {
            throw error(errc::format, "induced tree arrays disagree in length");
        }
        for (auto g : t.global_id) {
            if (g < 0 || g >= global_nodes) throw error(errc::format, "induced node points outside the suffix tree");
        }
        t.cp = get_partition(r, size);
        t.table = get_table<typename Layer::Table>(r);
    }
    const auto tree_count = static_cast<std::int32_t>(trees.size());
    const auto node_count = static_cast<std::int32_t>(nodes.size());
    if (nodes.empty() || nodes[0].tree != 0) throw error(errc::format, "decomposition has no root tree");
    for (const auto& d : nodes) {
        if (d.tree >= tree_count || d.child[0] >= node_count || d.child[1] >= node_count) {
            throw error(errc::format, "decomposition link out of range");
        }
    }
    return Dec::assemble(opt, std::move(nodes), std::move(trees));
}

}  // namespace io

inline IndexKind kind_of(const AnyIndex& idx) { return static_cast<IndexKind>(idx.index()); }

inline void save_index(std::ostream& out, const AnyIndex& idx) {
    io::Writer w(out);
    out.write(kIndexMagic.data(), kIndexMagic.size());
    w.u32(kIndexVersion);
    w.u32(static_cast<std::uint32_t>(kind_of(idx)));
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            io::put(w, x.text_index());
            if constexpr (std::is_same_v<T, CountIndex>) {
                io::put(w, x.partition());
                io::put(w, x.tables());
            } else {
                io::put(w, x.decomposition());
            }
        },
        idx);
    w.finish();
}

inline AnyIndex load_index(std::istream& in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kIndexMagic) throw error(errc::format, "not an index file");
    io::Reader r(in);
    const auto version = r.u32();
    if (version != kIndexVersion) {
        throw error(errc::format, "index format version " + std::to_string(version) + " is not supported");
    }
    const auto kind = r.u32();
    auto ti = io::get_text_index(r);
    const auto nodes = ti.tree().size();
    switch (static_cast<IndexKind>(kind)) {
    case IndexKind::count: {
        auto cp = io::get_partition(r, nodes);
        auto tables = io::get_table<BoundaryPairTable>(r);
        if (tables.boundary_count() != static_cast<std::int32_t>(cp.boundary_nodes().size())) {
            throw error(errc::format, "table does not match the partition");
        }
        return CountIndex::assemble(std::move(ti), std::move(cp), std::move(tables));
    }
    case IndexKind::report: {
        auto dec = io::get_decomposition<CountLayer>(r, nodes);
        return ReportIndex::assemble(std::move(ti), std::move(dec));
    }
    case IndexKind::zero_beta: {
        auto dec = io::get_decomposition<MinDistLayer>(r, nodes);
        return ZeroBetaIndex::assemble(std::move(ti), std::move(dec));
    }
    }
    throw error(errc::format, "unknown index kind " + std::to_string(kind));
}

}  // namespace gapidx
