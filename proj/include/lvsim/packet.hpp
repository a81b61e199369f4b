#ifndef LVSIM_PACKET_HPP
#define LVSIM_PACKET_HPP

#include <cstdint>
#include <variant>
#include <vector>

namespace lvsim {

// Everything on the wire is an ATM-cell-sized packet.
constexpr int kCellBits = 424;  // 53 bytes

enum class PacketKind : std::uint8_t {
    Video,
    RateFwdFb,   // source -> destinations, marked with explicit rates
    RateBwdFb,   // destinations -> source, merged at junctions
    CreditFb,    // hop-by-hop credits plus reception arrays
    Interference
};

// Forward feedback body of the rate-based mechanism.
struct FwdFeedback {
    int max_layers = 0;            // L
    double current_rate_bps = 0;   // R_C, combined source rate
    double explicit_rate_bps = 0;  // R_E, non-increasing along the path
};

// One (cumulative rate, destination counter) slot of a backward feedback
// packet's rate array.
struct RateEntry {
    double rate_bps = 0;
    int count = 0;
};

// Backward feedback body of the rate-based mechanism. Entries are sorted by
// ascending rate; entry rates are pairwise distinct after merging.
struct BwdFeedback {
    int max_layers = 0;
    std::vector<RateEntry> entries;
};

// Credit feedback body of the credit-based mechanism.
struct CreditFeedback {
    int max_layers = 0;
    std::int64_t credits_total = 0;  // C, cumulative since call establishment
    std::vector<int> full;           // F[1..L], index 0 is layer 1
    std::vector<int> partial;        // P[1..L]
};

struct Packet {
    PacketKind kind = PacketKind::Video;
    int conn = 0;          // connection index
    int layer = 1;         // priority index, 1 = base layer = highest priority
    std::int64_t seq = 0;  // per (conn, layer), strictly increasing at source
    int size_bits = kCellBits;
    std::variant<std::monostate, FwdFeedback, BwdFeedback, CreditFeedback> payload;

    bool is_video() const { return kind == PacketKind::Video; }
    bool is_control() const {
        return kind == PacketKind::RateFwdFb || kind == PacketKind::RateBwdFb ||
               kind == PacketKind::CreditFb;
    }
};

}  // namespace lvsim

#endif
