#include "mcf/io/beta_file.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include "mcf/errors.hpp"

namespace mcf::io {

namespace {

constexpr char kMagic[] = "BETAF32";
constexpr int kMaxHeaderBytes = 64;

void pack_le(float v, unsigned char* out) {
    const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    out[0] = static_cast<unsigned char>(bits & 0xff);
    out[1] = static_cast<unsigned char>((bits >> 8) & 0xff);
    out[2] = static_cast<unsigned char>((bits >> 16) & 0xff);
    out[3] = static_cast<unsigned char>((bits >> 24) & 0xff);
}

float unpack_le(const unsigned char* in) {
    const std::uint32_t bits = static_cast<std::uint32_t>(in[0]) |
                               (static_cast<std::uint32_t>(in[1]) << 8) |
                               (static_cast<std::uint32_t>(in[2]) << 16) |
                               (static_cast<std::uint32_t>(in[3]) << 24);
    return std::bit_cast<float>(bits);
}

} // namespace

void write_beta(const std::string& path, const BetaField& beta) {
    beta.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");

    std::ostringstream header;
    header << kMagic << ' ' << beta.width() << ' ' << beta.height() << '\n';
    const std::string header_str = header.str();
    out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));

    std::vector<unsigned char> payload(static_cast<size_t>(beta.pixel_count()) * 16);
    for (int i = 0; i < beta.pixel_count(); ++i) {
        for (int c = 0; c < 4; ++c) {
            pack_le(static_cast<float>(beta[i][c]),
                    payload.data() + static_cast<size_t>(i) * 16 + static_cast<size_t>(c) * 4);
        }
    }
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("failed to write " + path);
}

BetaField read_beta(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    std::string header;
    char ch = 0;
    while (in.get(ch) && ch != '\n') {
        header.push_back(ch);
        if (header.size() > kMaxHeaderBytes) throw IoError("oversized header in " + path);
    }
    if (ch != '\n') throw IoError("missing header line in " + path);

    std::istringstream parse(header);
    std::string magic;
    int width = 0;
    int height = 0;
    std::string trailing;
    if (!(parse >> magic >> width >> height) || magic != kMagic || parse >> trailing ||
        width <= 0 || height <= 0) {
        throw IoError("malformed header in " + path);
    }

    const size_t payload_size = static_cast<size_t>(width) * static_cast<size_t>(height) * 16;
    std::vector<unsigned char> payload(payload_size);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload_size));
    if (static_cast<size_t>(in.gcount()) != payload_size) {
        throw IoError("truncated payload in " + path);
    }
    if (in.get(ch)) throw IoError("trailing bytes in " + path);

    BetaField beta(width, height);
    for (int i = 0; i < beta.pixel_count(); ++i) {
        for (int c = 0; c < 4; ++c) {
            beta[i][c] = unpack_le(payload.data() + static_cast<size_t>(i) * 16 +
                                   static_cast<size_t>(c) * 4);
        }
    }
    return beta;
}

} // namespace mcf::io
