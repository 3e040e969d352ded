#include "driftmon/fsio.hpp"

#include <fstream>

#include "driftmon/errors.hpp"

namespace driftmon {

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw DataError("cannot rename " + tmp.string() + " to " + path.string() +
                        ": " + ec.message());
    }
}

} // namespace driftmon
