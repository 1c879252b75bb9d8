#pragma once

#include <array>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "spandup/packet.hpp"

namespace spandup {

enum class DuplicateType : uint8_t { Switching = 0, Routing = 1, NatRouting = 2, Proxying = 3 };

constexpr std::array<DuplicateType, 4> kAllDuplicateTypes = {
    DuplicateType::Switching, DuplicateType::Routing, DuplicateType::NatRouting,
    DuplicateType::Proxying};

inline const char* duplicate_type_name(DuplicateType t) {
    switch (t) {
    case DuplicateType::Switching: return "switching";
    case DuplicateType::Routing: return "routing";
    case DuplicateType::NatRouting: return "nat";
    case DuplicateType::Proxying: return "proxy";
    }
    return "?";
}

inline std::optional<DuplicateType> duplicate_type_from_name(const std::string& s) {
    if (s == "switching") return DuplicateType::Switching;
    if (s == "routing") return DuplicateType::Routing;
    if (s == "nat" || s == "nat-routing") return DuplicateType::NatRouting;
    if (s == "proxy" || s == "proxying") return DuplicateType::Proxying;
    return std::nullopt;
}

struct DuplicateTypeSet {
    uint8_t bits = 0;

    static DuplicateTypeSet all() { return DuplicateTypeSet{0x0f}; }
    static DuplicateTypeSet none() { return DuplicateTypeSet{0}; }
    static DuplicateTypeSet of(DuplicateType t) {
        return DuplicateTypeSet{static_cast<uint8_t>(1u << static_cast<uint8_t>(t))};
    }

    void add(DuplicateType t) { bits |= 1u << static_cast<uint8_t>(t); }
    bool contains(DuplicateType t) const { return bits & (1u << static_cast<uint8_t>(t)); }
    bool empty() const { return bits == 0; }
};

// Bookkeeping for the comparison pipeline: how pairs were rejected and, for
// pairs that reached the byte-by-byte payload stage, how far the comparison
// ran before the first mismatch.
struct CompareStats {
    uint64_t total_pairs = 0;
    uint64_t guard_rejections = 0;
    uint64_t payload_pairs = 0;     // entered payload comparison
    uint64_t payload_matches = 0;   // payload fully equal
    uint64_t header_rejections = 0; // payload equal but no comparator matched
    std::array<uint64_t, 4> matches_per_type{};
    std::vector<uint64_t> mismatch_at;  // index = bytes compared until mismatch

    void record_mismatch(uint32_t bytes_compared) {
        if (mismatch_at.size() <= bytes_compared) mismatch_at.resize(bytes_compared + 1, 0);
        ++mismatch_at[bytes_compared];
    }

    uint64_t total_matches() const {
        uint64_t n = 0;
        for (auto m : matches_per_type) n += m;
        return n;
    }

    void merge(const CompareStats& o) {
        total_pairs += o.total_pairs;
        guard_rejections += o.guard_rejections;
        payload_pairs += o.payload_pairs;
        payload_matches += o.payload_matches;
        header_rejections += o.header_rejections;
        for (size_t i = 0; i < matches_per_type.size(); ++i)
            matches_per_type[i] += o.matches_per_type[i];
        if (mismatch_at.size() < o.mismatch_at.size()) mismatch_at.resize(o.mismatch_at.size(), 0);
        for (size_t i = 0; i < o.mismatch_at.size(); ++i) mismatch_at[i] += o.mismatch_at[i];
    }
};

// Survival probability that a payload comparison is still undecided after n
// bytes, for n = 0..max recorded. mismatch_at[k] counts comparisons that
// exited after exactly k bytes; pairs that matched in full never exit, so a
// corpus of identical payloads keeps the curve flat at 1.
inline std::vector<double> survival_curve(const CompareStats& st) {
    std::vector<double> s(st.mismatch_at.size() + 1, 1.0);
    if (st.payload_pairs == 0) return s;
    uint64_t exited = 0;
    for (size_t n = 0; n < s.size(); ++n) {
        if (n < st.mismatch_at.size()) exited += st.mismatch_at[n];
        s[n] = static_cast<double>(st.payload_pairs - exited) /
               static_cast<double>(st.payload_pairs);
    }
    return s;
}

// First stage of every pair comparison: protocols and payload sizes must
// match. Zero-length payloads pass and defer to the header rules.
inline bool guard(const DissectedPacket& a, const DissectedPacket& b) {
    return a.protocol_class == b.protocol_class && a.payload_len() == b.payload_len();
}

struct PayloadCompare {
    bool equal;
    uint32_t bytes_compared;  // index of first mismatch + 1, or full length
};

inline PayloadCompare payload_equal(const DissectedPacket& a, const DissectedPacket& b) {
    auto pa = a.payload();
    auto pb = b.payload();
    const uint32_t n = static_cast<uint32_t>(std::min(pa.size(), pb.size()));
    for (uint32_t i = 0; i < n; ++i) {
        if (pa[i] != pb[i]) return {false, i + 1};
    }
    if (pa.size() != pb.size()) return {false, n};
    return {true, n};
}

namespace detail {

inline bool macs_equal(const DissectedPacket& a, const DissectedPacket& b) {
    return a.link.src_mac == b.link.src_mac && a.link.dst_mac == b.link.dst_mac;
}

inline bool macs_both_rewritten(const DissectedPacket& a, const DissectedPacket& b) {
    return a.link.src_mac != b.link.src_mac && a.link.dst_mac != b.link.dst_mac;
}

inline bool same_net_kind(const DissectedPacket& a, const DissectedPacket& b) {
    return a.net.index() == b.net.index();
}

inline uint32_t l3_payload_len(const DissectedPacket& p) {
    if (const auto* v4 = p.ipv4()) return static_cast<uint32_t>(v4->total_len - v4->header_len);
    if (const auto* v6 = p.ipv6()) return v6->payload_len;
    return 0;
}

inline bool spans_equal(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size()) == 0);
}

// Invariant fields of the IP header for the routed comparators: everything
// except TTL/hop limit, checksum, DSCP+ECN, options, and the address pair.
inline bool ip_invariants_equal(const DissectedPacket& a, const DissectedPacket& b) {
    if (const auto* a4 = a.ipv4()) {
        const auto* b4 = b.ipv4();
        return a4->identification == b4->identification &&
               a4->flags_fragment == b4->flags_fragment && a4->protocol == b4->protocol &&
               l3_payload_len(a) == l3_payload_len(b);
    }
    const auto* a6 = a.ipv6();
    const auto* b6 = b.ipv6();
    return a6->flow_label == b6->flow_label && a6->next_header == b6->next_header &&
           a6->payload_len == b6->payload_len;
}

inline bool addrs_equal(const DissectedPacket& a, const DissectedPacket& b, bool& src_equal,
                        bool& dst_equal) {
    if (const auto* a4 = a.ipv4()) {
        const auto* b4 = b.ipv4();
        src_equal = a4->src_ip == b4->src_ip;
        dst_equal = a4->dst_ip == b4->dst_ip;
    } else {
        const auto* a6 = a.ipv6();
        const auto* b6 = b.ipv6();
        src_equal = a6->src_ip == b6->src_ip;
        dst_equal = a6->dst_ip == b6->dst_ip;
    }
    return src_equal && dst_equal;
}

inline int ttl_of(const DissectedPacket& p) {
    if (const auto* v4 = p.ipv4()) return v4->ttl;
    if (const auto* v6 = p.ipv6()) return v6->hop_limit;
    return -1;
}

// strict mode: the egress copy must show a decrement of exactly one
inline bool ttl_step_ok(const DissectedPacket& original, const DissectedPacket& copy,
                        bool strict_ttl) {
    if (!strict_ttl) return true;
    return ttl_of(original) - ttl_of(copy) == 1;
}

inline bool transport_headers_identical(const DissectedPacket& a, const DissectedPacket& b) {
    return spans_equal(a.transport_header(), b.transport_header());
}

// TCP options live between the fixed 20-byte header and data_offset.
inline std::span<const uint8_t> tcp_options(const DissectedPacket& p) {
    auto h = p.transport_header();
    return h.size() > 20 ? h.subspan(20) : std::span<const uint8_t>{};
}

}  // namespace detail

// Layer-2 forwarding: same VLAN, nothing rewritten except possibly trunking
// encapsulation and QoS marking.
inline bool match_switching(const DissectedPacket& a, const DissectedPacket& b) {
    using namespace detail;
    if (!macs_equal(a, b)) return false;
    if (a.link.ethertype != b.link.ethertype) return false;
    if (!same_net_kind(a, b)) return false;

    if (const auto* a4 = a.ipv4()) {
        const auto* b4 = b.ipv4();
        if (a4->identification != b4->identification) return false;
        if (a4->flags_fragment != b4->flags_fragment) return false;
        if (a4->ttl != b4->ttl) return false;
        if (a4->protocol != b4->protocol) return false;
        if (a4->src_ip != b4->src_ip || a4->dst_ip != b4->dst_ip) return false;
        if (a4->header_len != b4->header_len || a4->total_len != b4->total_len) return false;
        if (!spans_equal(a.ipv4_options(), b.ipv4_options())) return false;
        // dscp/ecn and header checksum may change with remarking
    } else if (const auto* a6 = a.ipv6()) {
        const auto* b6 = b.ipv6();
        if (a6->flow_label != b6->flow_label) return false;
        if (a6->payload_len != b6->payload_len) return false;
        if (a6->next_header != b6->next_header) return false;
        if (a6->hop_limit != b6->hop_limit) return false;
        if (a6->src_ip != b6->src_ip || a6->dst_ip != b6->dst_ip) return false;
    }

    return transport_headers_identical(a, b);
}

// Layer-3 forwarding: both MACs rewritten, addresses unchanged. TTL,
// checksums, DSCP and IP options are off the table by rule.
inline bool match_routing(const DissectedPacket& a, const DissectedPacket& b,
                          bool strict_ttl = false) {
    using namespace detail;
    if (!a.ipv4() && !a.ipv6()) return false;
    if (!same_net_kind(a, b)) return false;
    if (!macs_both_rewritten(a, b)) return false;
    if (a.link.ethertype != b.link.ethertype) return false;

    bool src_eq = false, dst_eq = false;
    if (!addrs_equal(a, b, src_eq, dst_eq)) return false;
    if (!ip_invariants_equal(a, b)) return false;
    if (!ttl_step_ok(a, b, strict_ttl)) return false;

    return transport_headers_identical(a, b);
}

// Routed through a NAT: exactly one address translated, at most one port.
inline bool match_nat(const DissectedPacket& a, const DissectedPacket& b,
                      bool strict_ttl = false) {
    using namespace detail;
    const bool tcp = a.tcp() && b.tcp();
    const bool udp = a.udp() && b.udp();
    if (!tcp && !udp) return false;
    if (!same_net_kind(a, b)) return false;
    if (!macs_both_rewritten(a, b)) return false;
    if (a.link.ethertype != b.link.ethertype) return false;

    bool src_eq = false, dst_eq = false;
    addrs_equal(a, b, src_eq, dst_eq);
    if (src_eq == dst_eq) return false;  // exactly one address must change
    if (!ip_invariants_equal(a, b)) return false;
    if (!ttl_step_ok(a, b, strict_ttl)) return false;

    if (tcp) {
        const auto* at = a.tcp();
        const auto* bt = b.tcp();
        const bool sport_eq = at->src_port == bt->src_port;
        const bool dport_eq = at->dst_port == bt->dst_port;
        if (!sport_eq && !dport_eq) return false;  // at most one port mapped
        return at->seq == bt->seq && at->ack == bt->ack && at->flags == bt->flags &&
               at->window == bt->window && at->urgent == bt->urgent &&
               at->data_offset == bt->data_offset &&
               spans_equal(tcp_options(a), tcp_options(b));
    }
    const auto* au = a.udp();
    const auto* bu = b.udp();
    const bool sport_eq = au->src_port == bu->src_port;
    const bool dport_eq = au->dst_port == bu->dst_port;
    if (!sport_eq && !dport_eq) return false;
    return au->length == bu->length;
}

// TCP splicing at a transparent proxy or load balancer: one of seq/ack
// rewritten, ports untouched.
inline bool match_proxy(const DissectedPacket& a, const DissectedPacket& b) {
    using namespace detail;
    const auto* at = a.tcp();
    const auto* bt = b.tcp();
    if (!at || !bt) return false;
    if (!same_net_kind(a, b)) return false;
    if (!macs_both_rewritten(a, b)) return false;
    if (a.link.ethertype != b.link.ethertype) return false;

    bool src_eq = false, dst_eq = false;
    addrs_equal(a, b, src_eq, dst_eq);
    if (!src_eq && !dst_eq) return false;  // at most one address may change
    if (!ip_invariants_equal(a, b)) return false;

    if (at->src_port != bt->src_port || at->dst_port != bt->dst_port) return false;
    const bool seq_eq = at->seq == bt->seq;
    const bool ack_eq = at->ack == bt->ack;
    if (seq_eq == ack_eq) return false;  // exactly one of the pair rewritten
    return at->flags == bt->flags && at->window == bt->window && at->urgent == bt->urgent &&
           at->data_offset == bt->data_offset && spans_equal(tcp_options(a), tcp_options(b));
}

// Full pair decision: guard, payload, then the per-type comparators in
// fixed precedence. `a` is the earlier packet. Packets that failed to
// dissect can only pair with a bit-identical twin.
inline std::optional<DuplicateType> classify_pair(const DissectedPacket& a,
                                                  const DissectedPacket& b,
                                                  DuplicateTypeSet enabled = DuplicateTypeSet::all(),
                                                  bool strict_ttl = false,
                                                  CompareStats* stats = nullptr) {
    if (stats) ++stats->total_pairs;

    if (!guard(a, b)) {
        if (stats) ++stats->guard_rejections;
        return std::nullopt;
    }

    auto pc = payload_equal(a, b);
    if (stats) {
        ++stats->payload_pairs;
        if (pc.equal) ++stats->payload_matches;
        else stats->record_mismatch(pc.bytes_compared);
    }
    if (!pc.equal) return std::nullopt;

    std::optional<DuplicateType> result;
    if (a.malformed || b.malformed) {
        if (enabled.contains(DuplicateType::Switching) && a.raw.data == b.raw.data)
            result = DuplicateType::Switching;
    } else if (enabled.contains(DuplicateType::Switching) && match_switching(a, b)) {
        result = DuplicateType::Switching;
    } else if (enabled.contains(DuplicateType::Routing) && match_routing(a, b, strict_ttl)) {
        result = DuplicateType::Routing;
    } else if (enabled.contains(DuplicateType::NatRouting) && match_nat(a, b, strict_ttl)) {
        result = DuplicateType::NatRouting;
    } else if (enabled.contains(DuplicateType::Proxying) && match_proxy(a, b)) {
        result = DuplicateType::Proxying;
    }

    if (stats) {
        if (result) ++stats->matches_per_type[static_cast<uint8_t>(*result)];
        else ++stats->header_rejections;
    }
    return result;
}

}  // namespace spandup
