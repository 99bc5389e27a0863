#include "quadel/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace quadel {

namespace {

/// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(const std::string& bytes, size_t& pos) {
    while (pos < bytes.size()) {
        if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#')
        ++pos;
    if (start == pos) throw PgmError("truncated PGM header");
    return bytes.substr(start, pos - start);
}

int int_token(const std::string& bytes, size_t& pos, const char* what) {
    std::string tok = next_token(bytes, pos);
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw PgmError(std::string("bad PGM ") + what + " '" + tok + "'");
    }
}

}  // namespace

GrayImage parse_pgm(const std::string& bytes) {
    size_t pos = 0;
    std::string magic = next_token(bytes, pos);
    if (magic != "P5" && magic != "P2") throw PgmError("not a P2/P5 graymap");
    int width = int_token(bytes, pos, "width");
    int height = int_token(bytes, pos, "height");
    int maxval = int_token(bytes, pos, "maxval");
    if (width < 1 || height < 1) throw PgmError("PGM dimensions must be at least 1x1");
    if (maxval < 1 || maxval > 255) throw PgmError("only 8-bit graymaps are supported");

    GrayImage img(width, height);
    size_t count = static_cast<size_t>(width) * height;
    if (magic == "P5") {
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
            throw PgmError("malformed P5 header");
        ++pos;  // single whitespace after maxval
        if (bytes.size() - pos < count) throw PgmError("truncated P5 pixel data");
        for (size_t i = 0; i < count; ++i)
            img.data[i] = static_cast<unsigned char>(bytes[pos + i]);
    } else {
        for (size_t i = 0; i < count; ++i) {
            int v = int_token(bytes, pos, "pixel");
            if (v < 0 || v > maxval) throw PgmError("P2 pixel out of range");
            img.data[i] = v;
        }
    }
    return img;
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PgmError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pgm(ss.str());
}

std::string encode_pgm(const GrayImage& img) {
    std::ostringstream os;
    os << "P5\n" << img.width << " " << img.height << "\n255\n";
    for (double v : img.data) {
        int byte = static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
        os.put(static_cast<char>(byte));
    }
    return os.str();
}

void write_pgm(const std::string& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PgmError("cannot open '" + path + "' for writing");
    out << encode_pgm(img);
}

}  // namespace quadel
