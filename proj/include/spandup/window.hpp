#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "spandup/compare.hpp"
#include "spandup/packet.hpp"

namespace spandup {

struct TimeWindow {
    Nanoseconds duration = 100 * kNsPerMs;  // fallback when no link parameters are known
};
struct CountWindow {
    uint64_t k = 1;
};

struct WindowConfig {
    std::variant<TimeWindow, CountWindow> mode = TimeWindow{};
    DuplicateTypeSet enabled_types = DuplicateTypeSet::all();
    bool strict_ttl = false;
};

struct DuplicateVerdict {
    uint64_t packet_index = 0;
    uint64_t original_index = 0;
    DuplicateType dup_type = DuplicateType::Switching;
    uint64_t packet_distance = 0;   // packets strictly between the copies
    Nanoseconds time_delta = 0;     // copy separation as seen at the mirror
    bool low_confidence = false;    // either side was a truncated capture
};

// One element of the output stream: the packet, its verdict if it was
// recognized as a duplicate, and whether a later packet matched against it.
struct StreamItem {
    DissectedPacket pkt;
    std::optional<DuplicateVerdict> verdict;
    bool is_original = false;
};

// Sliding-window duplicate search. Packets are pushed in trace order; each
// is compared newest-to-oldest against the window, first match wins, and the
// packet then joins the window itself (duplicates included, so chains of N
// copies yield N-1 verdicts linked to the nearest prior copy).
//
// Window state is the only memory the engine keeps; finished items leave
// through take_evicted()/finish() in trace order.
class WindowEngine {
public:
    explicit WindowEngine(WindowConfig cfg) : cfg_(cfg) {}

    std::optional<DuplicateVerdict> push(DissectedPacket pkt) {
        const uint64_t index = pkt.raw.index;
        now_ = std::max(now_, pkt.raw.timestamp);

        if (const auto* tw = std::get_if<TimeWindow>(&cfg_.mode)) {
            const auto cutoff = static_cast<__int128>(now_) - tw->duration;
            while (!window_.empty() &&
                   static_cast<__int128>(window_.front().pkt.raw.timestamp) < cutoff)
                evict_front();
        }

        std::optional<DuplicateVerdict> verdict;
        for (auto it = window_.rbegin(); it != window_.rend(); ++it) {
            auto type = classify_pair(it->pkt, pkt, cfg_.enabled_types, cfg_.strict_ttl, &stats_);
            if (type) {
                DuplicateVerdict v;
                v.packet_index = index;
                v.original_index = it->pkt.raw.index;
                v.dup_type = *type;
                v.packet_distance = index - it->pkt.raw.index - 1;
                v.time_delta = std::max<Nanoseconds>(0, pkt.raw.timestamp - it->pkt.raw.timestamp);
                v.low_confidence = pkt.truncated || it->pkt.truncated;
                it->is_original = true;
                verdict = v;
                break;  // the search through the window stops at the first match
            }
        }

        window_.push_back(StreamItem{std::move(pkt), verdict, false});

        if (const auto* cw = std::get_if<CountWindow>(&cfg_.mode)) {
            while (window_.size() > cw->k) evict_front();
        }
        return verdict;
    }

    // Items that can no longer participate in a match, in trace order.
    std::vector<StreamItem> take_evicted() { return std::exchange(evicted_, {}); }

    // Flushes the window; no more pushes after this.
    std::vector<StreamItem> finish() {
        while (!window_.empty()) evict_front();
        return take_evicted();
    }

    size_t window_occupancy() const { return window_.size(); }
    const CompareStats& stats() const { return stats_; }
    const WindowConfig& config() const { return cfg_; }

private:
    void evict_front() {
        evicted_.push_back(std::move(window_.front()));
        window_.pop_front();
    }

    WindowConfig cfg_;
    std::deque<StreamItem> window_;
    std::vector<StreamItem> evicted_;
    CompareStats stats_;
    Nanoseconds now_ = std::numeric_limits<Nanoseconds>::min();
};

struct ProcessResult {
    std::vector<StreamItem> items;  // one per input packet, trace order
    CompareStats stats;

    std::vector<DuplicateVerdict> verdicts() const {
        std::vector<DuplicateVerdict> out;
        for (const auto& it : items)
            if (it.verdict) out.push_back(*it.verdict);
        return out;
    }
};

// Whole-trace convenience wrapper around WindowEngine.
inline ProcessResult process_stream(std::vector<RawPacket> packets, const WindowConfig& cfg,
                                    uint32_t link_type = kLinkTypeEthernet) {
    WindowEngine engine(cfg);
    ProcessResult res;
    res.items.reserve(packets.size());
    for (auto& p : packets) {
        engine.push(dissect(std::move(p), link_type));
        for (auto& item : engine.take_evicted()) res.items.push_back(std::move(item));
    }
    // evictions leave oldest-first, so items are already in trace order
    for (auto& item : engine.finish()) res.items.push_back(std::move(item));
    res.stats = engine.stats();
    return res;
}

struct EmptyInputError : Error {
    EmptyInputError() : Error("no verdicts to aggregate") {}
};

struct DistanceStats {
    double mean_time_delta_s = 0;
    double max_time_delta_s = 0;
    double mean_packet_distance = 0;
    uint64_t max_packet_distance = 0;
    std::map<uint64_t, uint64_t> packet_distance_hist;
    std::map<Nanoseconds, uint64_t> time_delta_hist;  // keyed by bin start
    Nanoseconds time_bin_width = 100 * kNsPerUs;
};

inline DistanceStats distance_stats(const std::vector<DuplicateVerdict>& verdicts,
                                    Nanoseconds time_bin_width = 100 * kNsPerUs) {
    if (verdicts.empty()) throw EmptyInputError{};
    DistanceStats st;
    st.time_bin_width = time_bin_width;
    long double time_sum = 0;
    long double dist_sum = 0;
    Nanoseconds max_dt = 0;
    for (const auto& v : verdicts) {
        time_sum += static_cast<long double>(v.time_delta);
        dist_sum += static_cast<long double>(v.packet_distance);
        max_dt = std::max(max_dt, v.time_delta);
        st.max_packet_distance = std::max(st.max_packet_distance, v.packet_distance);
        ++st.packet_distance_hist[v.packet_distance];
        ++st.time_delta_hist[(v.time_delta / time_bin_width) * time_bin_width];
    }
    const auto n = static_cast<long double>(verdicts.size());
    st.mean_time_delta_s = static_cast<double>(time_sum / n) / 1e9;
    st.max_time_delta_s = ns_to_seconds(max_dt);
    st.mean_packet_distance = static_cast<double>(dist_sum / n);
    return st;
}

}  // namespace spandup
