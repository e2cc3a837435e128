#pragma once

#include <chrono>
#include <optional>

namespace pdisp {

// Shared wall-clock budget. Inner search methods poll it between local
// minimizations; they never mutate it.
class Deadline {
public:
    static Deadline never() { return Deadline{}; }
    static Deadline after(double seconds) {
        Deadline d;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
        return d;
    }

    bool expired() const {
        return at_.has_value() && std::chrono::steady_clock::now() >= *at_;
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace pdisp
