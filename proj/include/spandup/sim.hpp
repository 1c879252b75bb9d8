#pragma once

#include <cmath>
#include <cstring>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "spandup/compare.hpp"
#include "spandup/packet.hpp"

namespace spandup {

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};
struct IncompatibleProfileError : Error {
    explicit IncompatibleProfileError(const std::string& what) : Error(what) {}
};

// Ethernet on-wire accounting: preamble + SFD + frame + FCS + inter-frame gap.
// StreamSpec lengths are on-wire octets; the captured frame excludes the
// 20 octets of preamble/IFG and the 4-octet FCS.
constexpr uint32_t kWireOverhead = 24;
constexpr uint32_t kMinWireLen = 64 + 20;
constexpr uint32_t kMaxWireLen = 1518 + 20;

enum class StreamRole : uint8_t { Main, Auxiliary, Interfering };

inline const char* stream_role_name(StreamRole r) {
    switch (r) {
    case StreamRole::Main: return "main";
    case StreamRole::Auxiliary: return "auxiliary";
    case StreamRole::Interfering: return "interfering";
    }
    return "?";
}

struct PacketTemplate {
    MacAddr src_mac{0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
    MacAddr dst_mac{0x02, 0x00, 0x00, 0x00, 0x00, 0x02};
    uint32_t src_ip = 0x0a000002;  // 10.0.0.2
    uint32_t dst_ip = 0x0a010002;  // 10.1.0.2
    uint16_t src_port = 40000;
    uint16_t dst_port = 80;
    uint8_t ttl = 64;
    uint8_t ip_proto = kIpProtoTcp;
    uint8_t dscp = 0;
};

struct StreamSpec {
    StreamRole role = StreamRole::Main;
    double rate_pps = 0;      // mean arrival rate; interarrivals are exponential
    uint32_t wire_len = 0;    // on-wire octets, [84, 1538]
    PacketTemplate tmpl;
};

// Header rewrites applied to the egress copy of every main-stream packet.
struct DuplicateProfile {
    DuplicateType type = DuplicateType::Routing;

    // routed types replace both MAC addresses
    MacAddr egress_src_mac{0x02, 0xaa, 0x00, 0x00, 0x00, 0x01};
    MacAddr egress_dst_mac{0x02, 0xaa, 0x00, 0x00, 0x00, 0x02};

    std::optional<uint32_t> new_ip;       // NAT: required; Proxying: optional
    bool rewrite_dst_ip = false;          // which side of the address pair NAT rewrites
    std::optional<uint16_t> new_port;     // NAT port translation, same side as new_ip

    uint32_t seq_offset = 0x2f1a7;        // proxy splicing offset
    bool proxy_rewrite_ack = false;       // rewrite ack instead of seq

    bool add_vlan_tag = false;            // trunking encapsulation on egress
    uint16_t vlan_vid = 100;
    uint8_t vlan_pcp = 0;
    std::optional<uint8_t> new_dscp;      // QoS remarking

    static DuplicateProfile defaults(DuplicateType t) {
        DuplicateProfile p;
        p.type = t;
        if (t == DuplicateType::NatRouting) {
            p.new_ip = 0xcb007107;  // 203.0.113.7
            p.new_port = 53124;
        }
        return p;
    }
};

struct MirrorQueueConfig {
    double capacity_bps = 1e9;  // copies serialize through the mirror port
};

struct SimConfig {
    std::vector<StreamSpec> streams;  // exactly one Main
    double link_capacity_bps = 100e6;
    uint32_t output_queue_cap = 40;   // packets held at the output port, head included
    double switching_time_s = 0.0;
    DuplicateProfile profile = DuplicateProfile::defaults(DuplicateType::Routing);
    uint64_t seed = 1;
    double duration_s = 0;
    std::optional<MirrorQueueConfig> mirror_queue;  // default: no mirror congestion
};

struct TraceLabel {
    uint64_t mirror_index = 0;    // egress copy
    uint64_t original_index = 0;  // ingress copy
    DuplicateType type = DuplicateType::Routing;
    Nanoseconds x_ns = 0;         // switching time
    Nanoseconds w_ns = 0;         // everything after the switching decision
};

struct SimSummary {
    uint64_t mirror_packets = 0;
    uint64_t main_arrivals = 0;
    uint64_t aux_arrivals = 0;
    uint64_t interfering_arrivals = 0;
    uint64_t main_drops = 0;
    uint64_t aux_drops = 0;
    uint64_t ttl_expired_copies = 0;
};

struct LabeledTrace {
    std::vector<RawPacket> packets;  // the mirror-port view, emission order
    std::vector<TraceLabel> labels;
    SimSummary summary;
};

namespace detail {

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// splitmix64, used to fill payload bytes without the cost of a mt19937 per packet
struct ByteStream {
    uint64_t state;
    explicit ByteStream(uint64_t seed) : state(seed) {}
    uint64_t next64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    void fill(uint8_t* p, size_t n) {
        size_t i = 0;
        while (i + 8 <= n) {
            uint64_t v = next64();
            std::memcpy(p + i, &v, 8);
            i += 8;
        }
        if (i < n) {
            uint64_t v = next64();
            std::memcpy(p + i, &v, n - i);
        }
    }
};

}  // namespace detail

// Reproducible Poisson arrival process: timestamps in [0, duration).
inline std::vector<double> exponential_arrivals(double rate_pps, double duration_s,
                                                uint64_t seed) {
    if (!(rate_pps > 0)) throw ConfigError("arrival rate must be positive");
    if (duration_s < 0) throw ConfigError("duration must be non-negative");
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(rate_pps * duration_s * 1.1) + 16);
    double t = 0;
    for (;;) {
        const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        t += -std::log(u) / rate_pps;
        if (t >= duration_s) break;
        out.push_back(t);
    }
    return out;
}

// --- Frame synthesis ----------------------------------------------------

struct FrameSpec {
    PacketTemplate hdr;
    uint32_t frame_len = 0;       // captured bytes; headers sized from hdr.ip_proto
    uint16_t identification = 0;
    uint32_t tcp_seq = 0x10000;
    uint32_t tcp_ack = 0x20000;
    uint16_t tcp_flags = 0x018;   // PSH|ACK
    uint64_t payload_seed = 0;    // payload bytes are pseudo-random from this seed
};

// Builds a well-formed Ethernet/IPv4/{TCP,UDP} frame with valid checksums.
inline std::vector<uint8_t> build_frame(const FrameSpec& spec) {
    const bool tcp = spec.hdr.ip_proto == kIpProtoTcp;
    const uint32_t l4_hdr = tcp ? 20u : 8u;
    const uint32_t min_len = 14 + 20 + l4_hdr;
    if (spec.frame_len < min_len) throw ConfigError("frame too short for its headers");

    std::vector<uint8_t> f(spec.frame_len, 0);
    // Ethernet
    std::copy(spec.hdr.dst_mac.begin(), spec.hdr.dst_mac.end(), f.begin());
    std::copy(spec.hdr.src_mac.begin(), spec.hdr.src_mac.end(), f.begin() + 6);
    write_be16(f.data() + 12, kEthertypeIpv4);
    // IPv4
    uint8_t* ip = f.data() + 14;
    const uint16_t total_len = static_cast<uint16_t>(spec.frame_len - 14);
    ip[0] = 0x45;
    ip[1] = static_cast<uint8_t>(spec.hdr.dscp << 2);
    write_be16(ip + 2, total_len);
    write_be16(ip + 4, spec.identification);
    write_be16(ip + 6, 0x4000);  // DF
    ip[8] = spec.hdr.ttl;
    ip[9] = spec.hdr.ip_proto;
    write_be32(ip + 12, spec.hdr.src_ip);
    write_be32(ip + 16, spec.hdr.dst_ip);
    // transport
    uint8_t* l4 = ip + 20;
    const uint32_t payload_len = spec.frame_len - min_len;
    if (tcp) {
        write_be16(l4, spec.hdr.src_port);
        write_be16(l4 + 2, spec.hdr.dst_port);
        write_be32(l4 + 4, spec.tcp_seq);
        write_be32(l4 + 8, spec.tcp_ack);
        l4[12] = 0x50;  // data offset 20
        l4[13] = static_cast<uint8_t>(spec.tcp_flags & 0xff);
        write_be16(l4 + 14, 0xffff);
    } else {
        write_be16(l4, spec.hdr.src_port);
        write_be16(l4 + 2, spec.hdr.dst_port);
        write_be16(l4 + 4, static_cast<uint16_t>(8 + payload_len));
    }
    detail::ByteStream bs(spec.payload_seed);
    bs.fill(l4 + l4_hdr, payload_len);

    // checksums last: IP header, then transport over the pseudo-header
    write_be16(ip + 10, 0);
    write_be16(ip + 10, compute_ipv4_checksum(std::span<const uint8_t>(ip, 20)));
    RawPacket rp;
    rp.captured_len = rp.original_len = static_cast<uint32_t>(f.size());
    rp.data = f;
    auto d = dissect(std::move(rp));
    const uint16_t l4sum = compute_l4_checksum(d);
    write_be16(f.data() + d.transport_offset + (tcp ? 16 : 6), l4sum);
    return f;
}

// --- Egress mutation ----------------------------------------------------

struct MutationResult {
    RawPacket packet;
    bool ttl_expired = false;  // decrement hit zero; a real router would discard
};

namespace detail {

inline void patch_ipv4_checksum(std::vector<uint8_t>& f, uint32_t net_offset, uint8_t hdr_len) {
    f[net_offset + 10] = 0;
    f[net_offset + 11] = 0;
    const uint16_t c =
        compute_ipv4_checksum(std::span<const uint8_t>(f.data() + net_offset, hdr_len));
    write_be16(f.data() + net_offset + 10, c);
}

inline void patch_l4_checksum(std::vector<uint8_t>& f) {
    RawPacket rp;
    rp.captured_len = rp.original_len = static_cast<uint32_t>(f.size());
    rp.data = f;
    auto d = dissect(std::move(rp));
    if (d.protocol_class != ProtocolClass::Tcp && d.protocol_class != ProtocolClass::Udp) return;
    const uint16_t c = compute_l4_checksum(d);
    write_be16(f.data() + d.transport_offset + (d.tcp() ? 16 : 6), c);
}

}  // namespace detail

// Applies the header rewrites of one duplicate type to a dissected packet
// and re-validates the checksums it disturbed. The payload never changes.
inline MutationResult mutate_for_type(const DissectedPacket& pkt, const DuplicateProfile& prof) {
    if (pkt.malformed) throw IncompatibleProfileError("cannot mutate an unparsed frame");
    const bool is_v4 = pkt.ipv4() != nullptr;
    const bool is_tcp = pkt.tcp() != nullptr;
    const bool is_udp = pkt.udp() != nullptr;

    switch (prof.type) {
    case DuplicateType::Switching: break;
    case DuplicateType::Routing:
        if (!is_v4) throw IncompatibleProfileError("routing profile needs an IPv4 packet");
        break;
    case DuplicateType::NatRouting:
        if (!is_v4 || (!is_tcp && !is_udp))
            throw IncompatibleProfileError("nat profile needs IPv4 TCP or UDP");
        if (!prof.new_ip) throw IncompatibleProfileError("nat profile needs a translated address");
        break;
    case DuplicateType::Proxying:
        if (!is_v4 || !is_tcp) throw IncompatibleProfileError("proxy profile needs IPv4 TCP");
        break;
    }

    MutationResult res;
    res.packet = pkt.raw;
    auto& f = res.packet.data;
    uint32_t net_offset = pkt.net_offset;
    uint32_t transport_offset = pkt.transport_offset;

    const bool routed = prof.type != DuplicateType::Switching;
    if (routed) {
        std::copy(prof.egress_dst_mac.begin(), prof.egress_dst_mac.end(), f.begin());
        std::copy(prof.egress_src_mac.begin(), prof.egress_src_mac.end(), f.begin() + 6);
    }

    bool ip_dirty = false;
    bool l4_dirty = false;

    if (is_v4 && (prof.type == DuplicateType::Routing || prof.type == DuplicateType::NatRouting)) {
        uint8_t& ttl = f[net_offset + 8];
        if (ttl > 0) --ttl;
        res.ttl_expired = (ttl == 0);
        ip_dirty = true;
    }

    if (prof.type == DuplicateType::NatRouting ||
        (prof.type == DuplicateType::Proxying && prof.new_ip)) {
        if (prof.new_ip) {
            write_be32(f.data() + net_offset + (prof.rewrite_dst_ip ? 16 : 12), *prof.new_ip);
            ip_dirty = true;
            l4_dirty = true;  // addresses are in the transport pseudo-header
        }
    }
    if (prof.type == DuplicateType::NatRouting && prof.new_port) {
        write_be16(f.data() + transport_offset + (prof.rewrite_dst_ip ? 2 : 0), *prof.new_port);
        l4_dirty = true;
    }

    if (prof.type == DuplicateType::Proxying) {
        const uint32_t off = transport_offset + (prof.proxy_rewrite_ack ? 8 : 4);
        write_be32(f.data() + off, read_be32(f.data() + off) + prof.seq_offset);
        l4_dirty = true;
    }

    if (prof.new_dscp && is_v4) {
        uint8_t& tos = f[net_offset + 1];
        tos = static_cast<uint8_t>((*prof.new_dscp << 2) | (tos & 0x03));
        ip_dirty = true;
    }

    if (ip_dirty && is_v4) detail::patch_ipv4_checksum(f, net_offset, pkt.ipv4()->header_len);
    if (l4_dirty) detail::patch_l4_checksum(f);

    if (prof.add_vlan_tag) {
        std::array<uint8_t, 4> tag;
        write_be16(tag.data(), kEthertypeVlan);
        write_be16(tag.data() + 2,
                   static_cast<uint16_t>((prof.vlan_pcp << 13) | (prof.vlan_vid & 0x0fff)));
        f.insert(f.begin() + 12, tag.begin(), tag.end());
        res.packet.captured_len += 4;
        res.packet.original_len += 4;
    }
    return res;
}

// --- Event engine -------------------------------------------------------

// Receives every mirror-port packet in emission order. The label is present
// on egress copies of main-stream packets whose ingress copy was mirrored.
using MirrorSink = std::function<void(RawPacket&&, std::optional<TraceLabel>&&)>;

inline void validate(const SimConfig& cfg) {
    int mains = 0;
    for (const auto& s : cfg.streams) {
        if (s.role == StreamRole::Main) ++mains;
        if (!(s.rate_pps > 0)) throw ConfigError("stream rate must be positive");
        if (s.wire_len < kMinWireLen || s.wire_len > kMaxWireLen)
            throw ConfigError("on-wire packet length must be in [84, 1538]");
        const uint32_t l4 = s.tmpl.ip_proto == kIpProtoTcp ? 20u : 8u;
        if (s.wire_len - kWireOverhead < 14 + 20 + l4)
            throw ConfigError("packet too short for its protocol headers");
        if (s.tmpl.ip_proto != kIpProtoTcp && s.tmpl.ip_proto != kIpProtoUdp)
            throw ConfigError("stream templates must be TCP or UDP");
    }
    if (mains != 1) throw ConfigError("exactly one main stream is required");
    if (cfg.output_queue_cap < 1) throw ConfigError("output queue capacity must be >= 1");
    if (!(cfg.link_capacity_bps > 0)) throw ConfigError("link capacity must be positive");
    if (cfg.switching_time_s < 0) throw ConfigError("switching time must be non-negative");
    if (cfg.duration_s < 0) throw ConfigError("duration must be non-negative");
    if (cfg.mirror_queue && !(cfg.mirror_queue->capacity_bps > 0))
        throw ConfigError("mirror capacity must be positive");
}

namespace detail {

struct EgressRec {
    double t = 0;          // service completion at the output port
    double arrival = 0;
    uint32_t stream = 0;
    uint64_t seq = 0;      // packet ordinal within its stream
};

struct PendingEvent {
    double t = 0;
    uint32_t stream = 0;
    uint64_t seq = 0;
    bool egress = false;
    double arrival = 0;  // for labels
};

}  // namespace detail

inline SimSummary run_simulation(const SimConfig& cfg, const MirrorSink& sink) {
    validate(cfg);
    SimSummary sum;

    const size_t n_streams = cfg.streams.size();
    std::vector<std::vector<double>> arrivals(n_streams);
    for (size_t i = 0; i < n_streams; ++i)
        arrivals[i] =
            exponential_arrivals(cfg.streams[i].rate_pps, cfg.duration_s,
                                 detail::mix_seed(cfg.seed, i));

    size_t main_idx = 0;
    for (size_t i = 0; i < n_streams; ++i)
        if (cfg.streams[i].role == StreamRole::Main) main_idx = i;

    for (size_t i = 0; i < n_streams; ++i) {
        switch (cfg.streams[i].role) {
        case StreamRole::Main: sum.main_arrivals = arrivals[i].size(); break;
        case StreamRole::Auxiliary: sum.aux_arrivals += arrivals[i].size(); break;
        case StreamRole::Interfering: sum.interfering_arrivals += arrivals[i].size(); break;
        }
    }

    // Output-port queue: merge Main+Auxiliary arrivals in time order and run
    // the FIFO recursion with per-packet deterministic service. The queue
    // admits at most output_queue_cap packets counting the one in service.
    std::vector<detail::EgressRec> egress;
    std::vector<uint8_t> main_dropped;  // per main seq
    {
        struct Cursor {
            uint32_t stream;
            size_t pos = 0;
        };
        std::vector<Cursor> cursors;
        for (size_t i = 0; i < n_streams; ++i)
            if (cfg.streams[i].role != StreamRole::Interfering)
                cursors.push_back({static_cast<uint32_t>(i)});

        main_dropped.assign(arrivals[main_idx].size(), 0);
        std::deque<double> in_system;  // completion times of admitted packets
        double last_completion = 0;

        for (;;) {
            int best = -1;
            double best_t = 0;
            for (size_t c = 0; c < cursors.size(); ++c) {
                const auto& cur = cursors[c];
                if (cur.pos >= arrivals[cur.stream].size()) continue;
                const double t = arrivals[cur.stream][cur.pos];
                if (best < 0 || t < best_t) {
                    best = static_cast<int>(c);
                    best_t = t;
                }
            }
            if (best < 0) break;
            auto& cur = cursors[best];
            const uint64_t seq = cur.pos++;
            const double enter = best_t + cfg.switching_time_s;

            while (!in_system.empty() && in_system.front() <= enter) in_system.pop_front();
            if (in_system.size() >= cfg.output_queue_cap) {
                if (cur.stream == main_idx) {
                    main_dropped[seq] = 1;
                    ++sum.main_drops;
                } else {
                    ++sum.aux_drops;
                }
                continue;
            }
            const double start = std::max(last_completion, enter);
            const double delta =
                cfg.streams[cur.stream].wire_len * 8.0 / cfg.link_capacity_bps;
            last_completion = start + delta;
            in_system.push_back(last_completion);
            egress.push_back({last_completion, best_t, cur.stream, seq});
        }
    }

    // Mirror emission: merge per-stream ingress sequences (Main and
    // Interfering arrivals) with the egress completion sequence, all of
    // which are individually time-sorted.
    struct Source {
        bool is_egress;
        uint32_t stream;  // ingress sources only
        size_t pos = 0;
    };
    std::vector<Source> sources;
    sources.push_back({true, 0});
    for (size_t i = 0; i < n_streams; ++i)
        if (cfg.streams[i].role != StreamRole::Auxiliary)
            sources.push_back({false, static_cast<uint32_t>(i)});

    std::vector<uint64_t> main_ingress_index(arrivals[main_idx].size(), 0);

    // optional mirror-port serialization
    double mirror_last_completion = 0;
    uint64_t mirror_index = 0;

    auto emit = [&](double t, uint32_t stream, uint64_t seq, bool is_egress, double arrival) {
        const StreamSpec& ss = cfg.streams[stream];
        const uint32_t frame_len = ss.wire_len - kWireOverhead;

        FrameSpec fs;
        fs.hdr = ss.tmpl;
        fs.frame_len = frame_len;
        fs.identification = static_cast<uint16_t>(seq & 0xffff);
        fs.tcp_seq = 0x10000 + static_cast<uint32_t>(seq) * 1460;
        fs.payload_seed = detail::mix_seed(detail::mix_seed(cfg.seed, 0xF00D + stream), seq);
        std::vector<uint8_t> bytes = build_frame(fs);

        RawPacket rp;
        rp.captured_len = rp.original_len = static_cast<uint32_t>(bytes.size());
        rp.data = std::move(bytes);

        bool ttl_expired = false;
        if (is_egress && stream == main_idx) {
            auto d = dissect(std::move(rp));
            auto mut = mutate_for_type(d, cfg.profile);
            rp = std::move(mut.packet);
            ttl_expired = mut.ttl_expired;
        }

        double emit_t = t;
        if (cfg.mirror_queue) {
            const double delta =
                (rp.original_len + kWireOverhead - (cfg.profile.add_vlan_tag && is_egress &&
                                                    stream == main_idx ? 4 : 0)) *
                8.0 / cfg.mirror_queue->capacity_bps;
            const double start = std::max(mirror_last_completion, t);
            mirror_last_completion = start + delta;
            emit_t = mirror_last_completion;
        }

        rp.index = mirror_index;
        rp.timestamp = static_cast<Nanoseconds>(std::llround(emit_t * 1e6)) * kNsPerUs;

        std::optional<TraceLabel> label;
        if (is_egress && stream == main_idx) {
            TraceLabel lb;
            lb.mirror_index = mirror_index;
            lb.original_index = main_ingress_index[seq];
            lb.type = cfg.profile.type;
            lb.x_ns = seconds_to_ns(cfg.switching_time_s);
            lb.w_ns = seconds_to_ns(emit_t - arrival - cfg.switching_time_s);
            label = lb;
            if (ttl_expired) ++sum.ttl_expired_copies;
        } else if (!is_egress && stream == main_idx) {
            main_ingress_index[seq] = mirror_index;
        }

        sink(std::move(rp), std::move(label));
        ++mirror_index;
    };

    for (;;) {
        int best = -1;
        double best_t = 0;
        for (size_t s = 0; s < sources.size(); ++s) {
            auto& src = sources[s];
            double t;
            if (src.is_egress) {
                if (src.pos >= egress.size()) continue;
                t = egress[src.pos].t;
            } else {
                if (src.pos >= arrivals[src.stream].size()) continue;
                t = arrivals[src.stream][src.pos];
            }
            // ingress copies precede egress copies on a timestamp tie
            if (best < 0 || t < best_t ||
                (t == best_t && !src.is_egress && sources[best].is_egress)) {
                best = static_cast<int>(s);
                best_t = t;
            }
        }
        if (best < 0) break;
        auto& src = sources[best];
        if (src.is_egress) {
            const auto& er = egress[src.pos++];
            emit(er.t, er.stream, er.seq, true, er.arrival);
        } else {
            const uint64_t seq = src.pos++;
            emit(best_t, src.stream, seq, false, best_t);
        }
    }

    sum.mirror_packets = mirror_index;
    return sum;
}

// Materialized run, for tests and modest trace sizes.
inline LabeledTrace simulate(const SimConfig& cfg) {
    LabeledTrace trace;
    trace.summary = run_simulation(cfg, [&](RawPacket&& pkt, std::optional<TraceLabel>&& label) {
        trace.packets.push_back(std::move(pkt));
        if (label) trace.labels.push_back(*label);
    });
    return trace;
}

// The reference testbed: two 3722 pps streams of 1538-octet packets sharing
// a 100 Mbps output port (utilization ~0.916), plus a sweepable interfering
// stream of minimum-size packets mirrored on ingress only.
inline SimConfig testbed_config(double interfering_pps, double duration_s, uint64_t seed,
                                DuplicateType type = DuplicateType::Routing) {
    SimConfig cfg;
    cfg.link_capacity_bps = 100e6;
    cfg.output_queue_cap = 40;
    cfg.seed = seed;
    cfg.duration_s = duration_s;
    cfg.profile = DuplicateProfile::defaults(type);

    StreamSpec main;
    main.role = StreamRole::Main;
    main.rate_pps = 3722;
    main.wire_len = 1538;
    main.tmpl.src_mac = {0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
    main.tmpl.dst_mac = {0x02, 0x00, 0x00, 0x00, 0x00, 0x02};
    main.tmpl.src_ip = 0x0a000002;   // 10.0.0.2
    main.tmpl.dst_ip = 0x0a010002;   // 10.1.0.2

    StreamSpec aux;
    aux.role = StreamRole::Auxiliary;
    aux.rate_pps = 3722;
    aux.wire_len = 1538;
    aux.tmpl.src_mac = {0x02, 0x00, 0x00, 0x00, 0x01, 0x01};
    aux.tmpl.dst_mac = {0x02, 0x00, 0x00, 0x00, 0x01, 0x02};
    aux.tmpl.src_ip = 0x0a000003;    // 10.0.0.3
    aux.tmpl.dst_ip = 0x0a010003;    // 10.1.0.3
    aux.tmpl.src_port = 40100;
    aux.tmpl.dst_port = 8080;

    StreamSpec inter;
    inter.role = StreamRole::Interfering;
    inter.rate_pps = interfering_pps;
    inter.wire_len = 84;
    inter.tmpl.src_mac = {0x02, 0x00, 0x00, 0x00, 0x02, 0x01};
    inter.tmpl.dst_mac = {0x02, 0x00, 0x00, 0x00, 0x02, 0x02};
    inter.tmpl.src_ip = 0x0a000004;  // 10.0.0.4
    inter.tmpl.dst_ip = 0x0a010004;  // 10.1.0.4
    inter.tmpl.src_port = 5001;
    inter.tmpl.dst_port = 5002;
    inter.tmpl.ip_proto = kIpProtoUdp;

    cfg.streams = {main, aux, inter};
    return cfg;
}

}  // namespace spandup
