#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dacs {

enum class MsgKind : std::uint8_t { z_init, delta_hat, x_broadcast, share };

const char* to_string(MsgKind k);

/// One message on one directed channel in one iteration. Payloads are kept
/// at extended precision because the SMPC x-broadcasts carry 61-bit
/// fixed-point values that a double cannot represent exactly.
///
/// Payload conventions per kind:
///   z_init      from -> to : sender's own z_{from|to}^(0)      (secure)
///   delta_hat   from -> to : update for the receiver-held z_{to|from}
///   x_broadcast from -> to : sender's x_from^(t)
///   share       from -> to : additive share r_from^to in Z_p   (secure)
struct Message {
    int t = 0;
    int from = 0;
    int to = 0;
    MsgKind kind = MsgKind::z_init;
    bool secure = false;         ///< true => invisible to the eavesdropper
    long double value = 0.0L;
    std::int64_t level = 0;      ///< quantizer level index (delta_hat only)
};

struct Transcript {
    std::vector<Message> messages;

    void add(int t, int from, int to, MsgKind kind, bool secure, long double value,
             std::int64_t level = 0) {
        messages.push_back({t, from, to, kind, secure, value, level});
    }

    /// CSV "t,from,to,kind,secure,value,level_index".
    void write_csv(std::ostream& os) const;
};

}  // namespace dacs
