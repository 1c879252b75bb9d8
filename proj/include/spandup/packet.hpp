#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "spandup/core.hpp"

namespace spandup {

constexpr uint32_t kLinkTypeEthernet = 1;  // LINKTYPE_ETHERNET

constexpr uint16_t kEthertypeIpv4 = 0x0800;
constexpr uint16_t kEthertypeIpv6 = 0x86DD;
constexpr uint16_t kEthertypeVlan = 0x8100;   // 802.1Q
constexpr uint16_t kEthertypeQinQ = 0x88A8;   // 802.1ad
constexpr uint8_t kIpProtoTcp = 6;
constexpr uint8_t kIpProtoUdp = 17;

struct RawPacket {
    uint64_t index = 0;            // ordinal position in trace (0-based)
    Nanoseconds timestamp = 0;
    uint32_t captured_len = 0;     // == data.size()
    uint32_t original_len = 0;     // on-wire length; >= captured_len
    std::vector<uint8_t> data;

    bool operator==(const RawPacket& o) const {
        return index == o.index && timestamp == o.timestamp && captured_len == o.captured_len &&
               original_len == o.original_len && data == o.data;
    }
};

enum class ProtocolClass : uint8_t { Tcp, Udp, OtherIp, NonIp };

inline const char* protocol_class_name(ProtocolClass c) {
    switch (c) {
    case ProtocolClass::Tcp: return "tcp";
    case ProtocolClass::Udp: return "udp";
    case ProtocolClass::OtherIp: return "other-ip";
    case ProtocolClass::NonIp: return "non-ip";
    }
    return "?";
}

struct VlanTag {
    uint16_t tpid = 0;
    uint8_t pcp = 0;   // 802.1p priority
    bool dei = false;
    uint16_t vid = 0;
};

using MacAddr = std::array<uint8_t, 6>;

struct EthernetView {
    MacAddr dst_mac{};
    MacAddr src_mac{};
    uint16_t ethertype = 0;  // after any VLAN tags
};

struct Ipv4View {
    uint8_t dscp = 0;
    uint8_t ecn = 0;
    uint16_t identification = 0;
    uint16_t flags_fragment = 0;   // raw flags+offset word
    uint8_t ttl = 0;
    uint8_t protocol = 0;
    uint16_t header_checksum = 0;
    uint32_t src_ip = 0;
    uint32_t dst_ip = 0;
    uint8_t header_len = 0;        // bytes, [20,60]
    uint16_t total_len = 0;

    bool more_fragments() const { return (flags_fragment & 0x2000) != 0; }
    uint16_t fragment_offset() const { return flags_fragment & 0x1fff; }
};

struct Ipv6View {
    uint8_t traffic_class = 0;
    uint32_t flow_label = 0;
    uint16_t payload_len = 0;
    uint8_t next_header = 0;
    uint8_t hop_limit = 0;
    std::array<uint8_t, 16> src_ip{};
    std::array<uint8_t, 16> dst_ip{};
};

struct TcpView {
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    uint32_t seq = 0;
    uint32_t ack = 0;
    uint16_t flags = 0;        // 9 bits incl. NS
    uint16_t window = 0;
    uint16_t checksum = 0;
    uint16_t urgent = 0;
    uint8_t data_offset = 0;   // header bytes, [20,60]
};

struct UdpView {
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    uint16_t length = 0;
    uint16_t checksum = 0;
};

struct NonIp {};
struct NonTransport {};

// Layered view of one captured frame. Offsets index into raw.data.
// protocol_class decides what payload_span denotes: TCP/UDP payload,
// IP payload for other IP protocols, Ethernet payload for non-IP frames.
struct DissectedPacket {
    RawPacket raw;

    EthernetView link;
    std::vector<VlanTag> vlan_tags;          // 0..2 entries
    std::variant<NonIp, Ipv4View, Ipv6View> net;
    std::variant<NonTransport, TcpView, UdpView> transport;

    uint32_t l2_end = 0;                     // first byte after Ethernet+tags
    uint32_t net_offset = 0, net_end = 0;
    uint32_t transport_offset = 0, transport_end = 0;
    uint32_t payload_begin = 0, payload_end = 0;  // [begin, end) into data

    ProtocolClass protocol_class = ProtocolClass::NonIp;
    bool truncated = false;   // captured_len < original_len
    bool malformed = false;   // header stack could not be parsed consistently

    const Ipv4View* ipv4() const { return std::get_if<Ipv4View>(&net); }
    const Ipv6View* ipv6() const { return std::get_if<Ipv6View>(&net); }
    const TcpView* tcp() const { return std::get_if<TcpView>(&transport); }
    const UdpView* udp() const { return std::get_if<UdpView>(&transport); }

    std::span<const uint8_t> payload() const {
        return std::span<const uint8_t>(raw.data).subspan(payload_begin, payload_end - payload_begin);
    }
    uint32_t payload_len() const { return payload_end - payload_begin; }

    std::span<const uint8_t> transport_header() const {
        return std::span<const uint8_t>(raw.data).subspan(transport_offset,
                                                          transport_end - transport_offset);
    }
    std::span<const uint8_t> ipv4_options() const {
        if (const auto* v4 = ipv4(); v4 && v4->header_len > 20)
            return std::span<const uint8_t>(raw.data).subspan(net_offset + 20, v4->header_len - 20);
        return {};
    }
};

namespace detail {

inline void dissect_transport(DissectedPacket& d, uint8_t ip_proto, uint32_t l4_off,
                              uint32_t l4_declared_len) {
    const auto& data = d.raw.data;
    const uint32_t cap = d.raw.captured_len;
    const uint32_t l4_declared_end = l4_off + l4_declared_len;

    auto clip = [cap](uint32_t v) { return v < cap ? v : cap; };

    if (ip_proto == kIpProtoTcp) {
        if (l4_off + 20 > cap || l4_declared_len < 20) {
            if (l4_off + 20 > cap && d.truncated && l4_declared_len >= 20) {
                // transport header cut off by snaplen: degrade to IP-payload view
                d.protocol_class = ProtocolClass::OtherIp;
                d.payload_begin = clip(l4_off);
                d.payload_end = clip(l4_declared_end);
                return;
            }
            d.malformed = true;
            return;
        }
        TcpView t;
        const uint8_t* p = data.data() + l4_off;
        t.src_port = read_be16(p);
        t.dst_port = read_be16(p + 2);
        t.seq = read_be32(p + 4);
        t.ack = read_be32(p + 8);
        t.data_offset = static_cast<uint8_t>((p[12] >> 4) * 4);
        t.flags = static_cast<uint16_t>(((p[12] & 0x01) << 8) | p[13]);
        t.window = read_be16(p + 14);
        t.checksum = read_be16(p + 16);
        t.urgent = read_be16(p + 18);
        if (t.data_offset < 20 || l4_off + t.data_offset > l4_declared_end) {
            d.malformed = true;
            return;
        }
        if (l4_off + t.data_offset > cap) {
            if (d.truncated) {
                d.protocol_class = ProtocolClass::OtherIp;
                d.payload_begin = clip(l4_off);
                d.payload_end = clip(l4_declared_end);
                return;
            }
            d.malformed = true;
            return;
        }
        d.transport = t;
        d.transport_offset = l4_off;
        d.transport_end = l4_off + t.data_offset;
        d.protocol_class = ProtocolClass::Tcp;
        d.payload_begin = d.transport_end;
        d.payload_end = clip(l4_declared_end);
        if (l4_declared_end > cap && !d.truncated) d.malformed = true;
    } else if (ip_proto == kIpProtoUdp) {
        if (l4_off + 8 > cap || l4_declared_len < 8) {
            if (l4_off + 8 > cap && d.truncated && l4_declared_len >= 8) {
                d.protocol_class = ProtocolClass::OtherIp;
                d.payload_begin = clip(l4_off);
                d.payload_end = clip(l4_declared_end);
                return;
            }
            d.malformed = true;
            return;
        }
        UdpView u;
        const uint8_t* p = data.data() + l4_off;
        u.src_port = read_be16(p);
        u.dst_port = read_be16(p + 2);
        u.length = read_be16(p + 4);
        u.checksum = read_be16(p + 6);
        if (u.length < 8 || u.length > l4_declared_len) {
            d.malformed = true;
            return;
        }
        d.transport = u;
        d.transport_offset = l4_off;
        d.transport_end = l4_off + 8;
        d.protocol_class = ProtocolClass::Udp;
        d.payload_begin = d.transport_end;
        d.payload_end = clip(l4_off + u.length);
        if (l4_off + u.length > cap && !d.truncated) d.malformed = true;
    } else {
        d.protocol_class = ProtocolClass::OtherIp;
        d.payload_begin = clip(l4_off);
        d.payload_end = clip(l4_declared_end);
        if (l4_declared_end > cap && !d.truncated) d.malformed = true;
    }
}

}  // namespace detail

// Parses one captured frame into layered views. Total: never throws and never
// drops — inputs that cannot be parsed come back flagged `malformed` with the
// whole frame as payload, so they can still match a bit-identical twin.
inline DissectedPacket dissect(RawPacket pkt, uint32_t link_type = kLinkTypeEthernet) {
    DissectedPacket d;
    d.raw = std::move(pkt);
    d.truncated = d.raw.captured_len < d.raw.original_len;

    const auto& data = d.raw.data;
    const uint32_t cap = d.raw.captured_len;

    auto fail = [&d, cap]() -> DissectedPacket {
        d.malformed = true;
        d.protocol_class = ProtocolClass::NonIp;
        d.net = NonIp{};
        d.transport = NonTransport{};
        d.payload_begin = 0;
        d.payload_end = cap;
        return std::move(d);
    };

    if (link_type != kLinkTypeEthernet || cap < 14) return fail();

    std::copy_n(data.data(), 6, d.link.dst_mac.begin());
    std::copy_n(data.data() + 6, 6, d.link.src_mac.begin());

    uint32_t off = 12;
    uint16_t ethertype = read_be16(data.data() + off);
    off += 2;

    // At most two 802.1Q/802.1ad tags; anything deeper stays in the payload.
    for (int i = 0; i < 2 && (ethertype == kEthertypeVlan || ethertype == kEthertypeQinQ); ++i) {
        if (off + 4 > cap) return fail();
        uint16_t tci = read_be16(data.data() + off);
        VlanTag tag;
        tag.tpid = ethertype;
        tag.pcp = static_cast<uint8_t>(tci >> 13);
        tag.dei = (tci & 0x1000) != 0;
        tag.vid = tci & 0x0fff;
        d.vlan_tags.push_back(tag);
        ethertype = read_be16(data.data() + off + 2);
        off += 4;
    }
    d.link.ethertype = ethertype;
    d.l2_end = off;

    if (ethertype == kEthertypeIpv4) {
        if (off + 20 > cap) return fail();
        const uint8_t* p = data.data() + off;
        if ((p[0] >> 4) != 4) return fail();
        Ipv4View v4;
        v4.header_len = static_cast<uint8_t>((p[0] & 0x0f) * 4);
        v4.dscp = static_cast<uint8_t>(p[1] >> 2);
        v4.ecn = static_cast<uint8_t>(p[1] & 0x03);
        v4.total_len = read_be16(p + 2);
        v4.identification = read_be16(p + 4);
        v4.flags_fragment = read_be16(p + 6);
        v4.ttl = p[8];
        v4.protocol = p[9];
        v4.header_checksum = read_be16(p + 10);
        v4.src_ip = read_be32(p + 12);
        v4.dst_ip = read_be32(p + 16);
        if (v4.header_len < 20 || v4.total_len < v4.header_len) return fail();
        if (off + v4.header_len > cap) return fail();

        d.net = v4;
        d.net_offset = off;
        d.net_end = off + v4.header_len;
        d.transport = NonTransport{};

        const uint32_t l4_off = d.net_end;
        const uint32_t l4_len = v4.total_len - v4.header_len;

        if (v4.fragment_offset() != 0) {
            // non-first fragment: no transport header present
            d.protocol_class = ProtocolClass::OtherIp;
            d.payload_begin = std::min(l4_off, cap);
            d.payload_end = std::min(l4_off + l4_len, cap);
            if (l4_off + l4_len > cap && !d.truncated) d.malformed = true;
        } else {
            detail::dissect_transport(d, v4.protocol, l4_off, l4_len);
        }
        if (d.malformed) return fail();
        return d;
    }

    if (ethertype == kEthertypeIpv6) {
        if (off + 40 > cap) return fail();
        const uint8_t* p = data.data() + off;
        if ((p[0] >> 4) != 6) return fail();
        Ipv6View v6;
        v6.traffic_class = static_cast<uint8_t>(((p[0] & 0x0f) << 4) | (p[1] >> 4));
        v6.flow_label = (static_cast<uint32_t>(p[1] & 0x0f) << 16) | (p[2] << 8) | p[3];
        v6.payload_len = read_be16(p + 4);
        v6.next_header = p[6];
        v6.hop_limit = p[7];
        std::copy_n(p + 8, 16, v6.src_ip.begin());
        std::copy_n(p + 24, 16, v6.dst_ip.begin());

        d.net = v6;
        d.net_offset = off;
        d.net_end = off + 40;
        d.transport = NonTransport{};

        const uint32_t l4_off = d.net_end;
        const uint32_t l4_len = v6.payload_len;

        if (v6.next_header == kIpProtoTcp || v6.next_header == kIpProtoUdp) {
            detail::dissect_transport(d, v6.next_header, l4_off, l4_len);
        } else {
            // extension-header chains are compared at IP-payload level
            d.protocol_class = ProtocolClass::OtherIp;
            d.payload_begin = std::min(l4_off, cap);
            d.payload_end = std::min(l4_off + l4_len, cap);
            if (l4_off + l4_len > cap && !d.truncated) d.malformed = true;
        }
        if (d.malformed) return fail();
        return d;
    }

    // Non-IP frame (ARP, LLDP, a third VLAN tag, ...): Ethernet payload.
    d.net = NonIp{};
    d.transport = NonTransport{};
    d.protocol_class = ProtocolClass::NonIp;
    d.payload_begin = off;
    d.payload_end = cap;
    return d;
}

// --- Checksums ---------------------------------------------------------

struct OddLengthError : Error {
    OddLengthError() : Error("checksum input length must be even") {}
};
struct LengthRangeError : Error {
    LengthRangeError() : Error("IPv4 header length must be in [20,60]") {}
};
struct TruncatedPayloadError : Error {
    TruncatedPayloadError() : Error("cannot checksum a truncated capture") {}
};

namespace detail {

// One's-complement accumulation of 16-bit big-endian words; a trailing odd
// byte is padded with zero.
inline uint32_t ones_sum(std::span<const uint8_t> bytes, uint32_t acc = 0) {
    size_t i = 0;
    for (; i + 1 < bytes.size(); i += 2) acc += read_be16(bytes.data() + i);
    if (i < bytes.size()) acc += static_cast<uint32_t>(bytes[i]) << 8;
    return acc;
}

inline uint16_t ones_fold(uint32_t acc) {
    while (acc >> 16) acc = (acc & 0xffff) + (acc >> 16);
    return static_cast<uint16_t>(acc);
}

}  // namespace detail

// RFC 1071 header checksum. `header_bytes` is the IPv4 header with the
// checksum field zeroed.
inline uint16_t compute_ipv4_checksum(std::span<const uint8_t> header_bytes) {
    if (header_bytes.size() % 2 != 0) throw OddLengthError{};
    if (header_bytes.size() < 20 || header_bytes.size() > 60) throw LengthRangeError{};
    return static_cast<uint16_t>(~detail::ones_fold(detail::ones_sum(header_bytes)));
}

// Word-sum over a stored header (checksum field included) folds to 0xFFFF
// when the checksum is valid.
inline bool verify_ipv4_checksum(std::span<const uint8_t> header_bytes) {
    if (header_bytes.size() % 2 != 0 || header_bytes.size() < 20 || header_bytes.size() > 60)
        return false;
    return detail::ones_fold(detail::ones_sum(header_bytes)) == 0xffff;
}

// TCP/UDP checksum over pseudo-header + transport header + payload, with the
// stored checksum field treated as zero. UDP maps a computed 0x0000 to 0xFFFF.
inline uint16_t compute_l4_checksum(const DissectedPacket& pkt) {
    if (pkt.protocol_class != ProtocolClass::Tcp && pkt.protocol_class != ProtocolClass::Udp)
        throw Error("compute_l4_checksum requires a TCP or UDP packet");
    if (pkt.truncated || pkt.malformed) throw TruncatedPayloadError{};

    const bool is_tcp = pkt.protocol_class == ProtocolClass::Tcp;
    const uint32_t seg_len = pkt.payload_end - pkt.transport_offset;  // header + payload

    uint32_t acc = 0;
    if (const auto* v4 = pkt.ipv4()) {
        std::array<uint8_t, 12> pseudo{};
        write_be32(pseudo.data(), v4->src_ip);
        write_be32(pseudo.data() + 4, v4->dst_ip);
        pseudo[8] = 0;
        pseudo[9] = v4->protocol;
        write_be16(pseudo.data() + 10, static_cast<uint16_t>(seg_len));
        acc = detail::ones_sum(pseudo);
    } else if (const auto* v6 = pkt.ipv6()) {
        std::array<uint8_t, 40> pseudo{};
        std::copy(v6->src_ip.begin(), v6->src_ip.end(), pseudo.begin());
        std::copy(v6->dst_ip.begin(), v6->dst_ip.end(), pseudo.begin() + 16);
        write_be32(pseudo.data() + 32, seg_len);
        pseudo[39] = v6->next_header;
        acc = detail::ones_sum(pseudo);
    } else {
        throw Error("compute_l4_checksum requires an IP packet");
    }

    const uint32_t cksum_off = pkt.transport_offset + (is_tcp ? 16u : 6u);
    std::span<const uint8_t> seg(pkt.raw.data.data() + pkt.transport_offset, seg_len);
    acc = detail::ones_sum(seg.first(cksum_off - pkt.transport_offset), acc);
    acc = detail::ones_sum(seg.subspan(cksum_off - pkt.transport_offset + 2), acc);

    uint16_t cksum = static_cast<uint16_t>(~detail::ones_fold(acc));
    if (!is_tcp && cksum == 0) cksum = 0xffff;  // UDP: 0 means "no checksum"
    return cksum;
}

inline bool verify_l4_checksum(const DissectedPacket& pkt) {
    uint16_t stored = 0;
    if (const auto* t = pkt.tcp()) stored = t->checksum;
    else if (const auto* u = pkt.udp()) stored = u->checksum;
    else return false;
    uint16_t computed = compute_l4_checksum(pkt);
    if (pkt.protocol_class == ProtocolClass::Udp && stored == 0) return true;  // checksum disabled
    return computed == stored;
}

}  // namespace spandup
