#include "dacs/transcript.hpp"

#include <ostream>

namespace dacs {

const char* to_string(MsgKind k) {
    switch (k) {
        case MsgKind::z_init: return "z_init";
        case MsgKind::delta_hat: return "delta_hat";
        case MsgKind::x_broadcast: return "x_broadcast";
        case MsgKind::share: return "share";
    }
    return "?";
}

void Transcript::write_csv(std::ostream& os) const {
    os << "t,from,to,kind,secure,value,level_index\n";
    os.precision(21);
    for (const auto& msg : messages)
        os << msg.t << ',' << msg.from << ',' << msg.to << ',' << to_string(msg.kind) << ','
           << (msg.secure ? 1 : 0) << ',' << static_cast<double>(msg.value) << ',' << msg.level
           << '\n';
}

}  // namespace dacs
