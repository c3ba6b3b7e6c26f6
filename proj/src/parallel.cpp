#include "fracspec/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace fracspec {

std::size_t thread_cap() {
    if (const char* env = std::getenv("FRACSPEC_THREADS")) {
        const std::string_view text(env);
        std::size_t value = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && end == text.data() + text.size() && value > 0) {
            return value;
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace fracspec
