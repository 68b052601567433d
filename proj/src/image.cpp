#include "sdr/image.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

std::size_t EdgeMap::true_count() const {
    std::size_t n = 0;
    for (auto v : mask) n += (v != 0);
    return n;
}

std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::lround(y));
}

namespace {

void check_dims(int w, int h) {
    if (w < 3 || h < 3) {
        throw InputError("image too small: " + std::to_string(w) + "x" + std::to_string(h) +
                         " (need at least 3x3)");
    }
}

// ---------------------------------------------------------------------------
// PGM (Netpbm P2/P5)
// ---------------------------------------------------------------------------

class PnmTokenizer {
public:
    explicit PnmTokenizer(const std::string& bytes) : bytes_(bytes) {}

    // Next whitespace-delimited token, skipping '#' comments.
    std::string next_token() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw InputError("malformed PGM header: unexpected end of file");
        std::string tok;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            tok.push_back(bytes_[pos_++]);
        }
        return tok;
    }

    int next_int(const char* what) {
        const std::string tok = next_token();
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw InputError(std::string("malformed PGM header: bad ") + what + " '" + tok + "'");
        }
    }

    // P5: exactly one whitespace byte separates maxval from raster data.
    void skip_single_whitespace() {
        if (pos_ < bytes_.size() && std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    }

    std::size_t pos() const { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    std::size_t pos_ = 0;
};

GrayImage decode_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw InputError("not a PGM file (expected P2 or P5 magic)");
    }
    const bool binary = bytes[1] == '5';
    PnmTokenizer tok(bytes);
    tok.next_token();  // magic
    const int w = tok.next_int("width");
    const int h = tok.next_int("height");
    const int maxval = tok.next_int("maxval");
    if (w <= 0 || h <= 0) throw InputError("malformed PGM header: non-positive dimensions");
    check_dims(w, h);
    if (maxval <= 0 || maxval > 255) {
        throw InputError("unsupported PGM maxval " + std::to_string(maxval) + " (must be 1..255)");
    }

    GrayImage img;
    img.width = w;
    img.height = h;
    img.data.resize(std::size_t(w) * h);

    const std::size_t n = img.data.size();
    if (binary) {
        tok.skip_single_whitespace();
        if (bytes.size() - tok.pos() < n) throw InputError("truncated PGM raster");
        const auto* raw = reinterpret_cast<const std::uint8_t*>(bytes.data() + tok.pos());
        for (std::size_t i = 0; i < n; ++i) {
            if (raw[i] > maxval) throw InputError("PGM sample exceeds maxval");
            img.data[i] = maxval == 255
                              ? raw[i]
                              : static_cast<std::uint8_t>(std::lround(raw[i] * 255.0 / maxval));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = tok.next_int("sample");
            if (v < 0 || v > maxval) throw InputError("PGM sample out of range");
            img.data[i] = maxval == 255
                              ? static_cast<std::uint8_t>(v)
                              : static_cast<std::uint8_t>(std::lround(v * 255.0 / maxval));
        }
    }
    return img;
}

// ---------------------------------------------------------------------------
// PNG (8-bit grayscale or RGB, non-interlaced)
// ---------------------------------------------------------------------------

constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::uint32_t read_be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) |
           std::uint32_t(p[3]);
}

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

GrayImage decode_png(const std::string& bytes) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(bytes.data());
    const std::size_t size = bytes.size();
    if (size < 8 || std::memcmp(p, kPngSig, 8) != 0) throw InputError("not a PNG file");

    std::uint32_t width = 0, height = 0;
    int color_type = -1;
    std::string idat;
    bool saw_ihdr = false, saw_iend = false;

    std::size_t pos = 8;
    while (pos + 12 <= size && !saw_iend) {
        const std::uint32_t len = read_be32(p + pos);
        if (pos + 12 + len > size) throw InputError("truncated PNG chunk");
        const char* type = reinterpret_cast<const char*>(p + pos + 4);
        const std::uint8_t* data = p + pos + 8;
        const std::uint32_t stored_crc = read_be32(p + pos + 8 + len);
        const auto crc =
            static_cast<std::uint32_t>(crc32(crc32(0L, Z_NULL, 0), p + pos + 4, len + 4));
        if (crc != stored_crc) throw InputError("PNG chunk CRC mismatch");

        if (std::strncmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw InputError("malformed PNG IHDR");
            width = read_be32(data);
            height = read_be32(data + 4);
            const int bit_depth = data[8];
            color_type = data[9];
            const int interlace = data[12];
            if (bit_depth != 8) throw InputError("unsupported PNG bit depth (only 8 supported)");
            if (color_type != 0 && color_type != 2) {
                throw InputError("unsupported PNG color type (only grayscale and RGB supported)");
            }
            if (interlace != 0) throw InputError("interlaced PNG not supported");
            saw_ihdr = true;
        } else if (std::strncmp(type, "IDAT", 4) == 0) {
            idat.append(reinterpret_cast<const char*>(data), len);
        } else if (std::strncmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || !saw_iend || idat.empty()) throw InputError("malformed PNG: missing chunks");
    if (width == 0 || height == 0) throw InputError("malformed PNG: zero dimensions");
    check_dims(int(width), int(height));

    const int channels = color_type == 2 ? 3 : 1;
    const std::size_t stride = std::size_t(width) * channels;
    const std::size_t raw_size = (stride + 1) * height;

    std::vector<std::uint8_t> raw(raw_size);
    uLongf dest_len = raw_size;
    const int zrc = uncompress(raw.data(), &dest_len,
                               reinterpret_cast<const Bytef*>(idat.data()), idat.size());
    if (zrc != Z_OK || dest_len != raw_size) throw InputError("PNG inflate failed");

    // Undo per-scanline filters in place.
    std::vector<std::uint8_t> prev(stride, 0);
    GrayImage img;
    img.width = int(width);
    img.height = int(height);
    img.data.resize(std::size_t(width) * height);

    for (std::uint32_t y = 0; y < height; ++y) {
        const std::uint8_t filter = raw[(stride + 1) * y];
        std::uint8_t* row = raw.data() + (stride + 1) * y + 1;
        for (std::size_t i = 0; i < stride; ++i) {
            const int left = i >= std::size_t(channels) ? row[i - channels] : 0;
            const int up = prev[i];
            const int upleft = i >= std::size_t(channels) ? prev[i - channels] : 0;
            int v = row[i];
            switch (filter) {
                case 0: break;
                case 1: v += left; break;
                case 2: v += up; break;
                case 3: v += (left + up) / 2; break;
                case 4: v += paeth(left, up, upleft); break;
                default: throw InputError("unknown PNG filter type");
            }
            row[i] = std::uint8_t(v & 0xFF);
        }
        std::memcpy(prev.data(), row, stride);
        for (std::uint32_t x = 0; x < width; ++x) {
            img.data[std::size_t(y) * width + x] =
                channels == 1 ? row[x] : luminance(row[3 * x], row[3 * x + 1], row[3 * x + 2]);
        }
    }
    return img;
}

}  // namespace

GrayImage decode_image(const std::string& bytes, ImageFormat format) {
    if (format == ImageFormat::autodetect) {
        if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0) {
            format = ImageFormat::png;
        } else if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
            format = ImageFormat::pgm;
        } else {
            throw InputError("unrecognized image format (expected PGM P2/P5 or PNG)");
        }
    }
    return format == ImageFormat::png ? decode_png(bytes) : decode_pgm(bytes);
}

GrayImage load_image(const std::filesystem::path& path, ImageFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open image: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_image(buf.str(), format);
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write image: " + path.string());
    if (binary) {
        out << "P5\n" << img.width << " " << img.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(img.data.data()),
                  std::streamsize(img.data.size()));
    } else {
        out << "P2\n" << img.width << " " << img.height << "\n255\n";
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                out << int(img.at(x, y)) << (x + 1 == img.width ? '\n' : ' ');
            }
        }
    }
    if (!out) throw InputError("write failed: " + path.string());
}

GradientField sobel_magnitude(const GrayImage& img) {
    check_dims(img.width, img.height);
    if (img.data.size() != std::size_t(img.width) * img.height) {
        throw InputError("GrayImage data length does not match dimensions");
    }
    GradientField g;
    g.width = img.width;
    g.height = img.height;
    g.mag.assign(std::size_t(img.width) * img.height, 0.0);

    for (int y = 1; y + 1 < img.height; ++y) {
        for (int x = 1; x + 1 < img.width; ++x) {
            const int tl = img.at(x - 1, y - 1), tc = img.at(x, y - 1), tr = img.at(x + 1, y - 1);
            const int ml = img.at(x - 1, y), mr = img.at(x + 1, y);
            const int bl = img.at(x - 1, y + 1), bc = img.at(x, y + 1), br = img.at(x + 1, y + 1);
            const int gx = (tr + 2 * mr + br) - (tl + 2 * ml + bl);
            const int gy = (bl + 2 * bc + br) - (tl + 2 * tc + tr);
            g.mag[std::size_t(y) * img.width + x] = std::sqrt(double(gx) * gx + double(gy) * gy);
        }
    }
    return g;
}

namespace {

EdgeMap threshold_with_cut(const GradientField& grad, double cut) {
    EdgeMap e;
    e.width = grad.width;
    e.height = grad.height;
    e.mask.assign(grad.mag.size(), 0);
    if (cut <= 0.0) return e;  // all-zero field stays all-false
    for (std::size_t i = 0; i < grad.mag.size(); ++i) e.mask[i] = grad.mag[i] >= cut ? 1 : 0;
    return e;
}

}  // namespace

EdgeMap threshold_edges(const GradientField& grad, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw InputError("relative threshold must be in (0, 1]");
    }
    const double mx = grad.mag.empty() ? 0.0 : *std::max_element(grad.mag.begin(), grad.mag.end());
    return threshold_with_cut(grad, threshold * mx);
}

EdgeMap threshold_edges_absolute(const GradientField& grad, double threshold) {
    if (!(threshold > 0.0)) throw InputError("absolute threshold must be positive");
    return threshold_with_cut(grad, threshold);
}

std::vector<Polyline> trace_contours(const EdgeMap& edges) {
    const int w = edges.width, h = edges.height;
    std::vector<std::uint8_t> visited(edges.mask.size(), 0);
    std::vector<Polyline> out;

    // Step preference: 4-neighbors before diagonals, each in (y,x) order.
    static const int kStep[8][2] = {{0, -1}, {-1, 0}, {1, 0},  {0, 1},
                                    {-1, -1}, {1, -1}, {-1, 1}, {1, 1}};

    auto next_unvisited = [&](int x, int y) -> std::pair<int, int> {
        for (const auto& d : kStep) {
            const int nx = x + d[0], ny = y + d[1];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t idx = std::size_t(ny) * w + nx;
            if (edges.mask[idx] && !visited[idx]) return {nx, ny};
        }
        return {-1, -1};
    };

    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            const std::size_t sidx = std::size_t(sy) * w + sx;
            if (!edges.mask[sidx] || visited[sidx]) continue;

            Polyline line;
            int x = sx, y = sy;
            visited[sidx] = 1;
            line.points.push_back({double(x), double(y)});
            while (true) {
                const auto [nx, ny] = next_unvisited(x, y);
                if (nx < 0) break;
                visited[std::size_t(ny) * w + nx] = 1;
                line.points.push_back({double(nx), double(ny)});
                x = nx;
                y = ny;
            }

            if (line.points.size() >= 3) {
                const Vec2 a = line.points.front(), b = line.points.back();
                const double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
                line.closed = dx <= 1.0 && dy <= 1.0;
            }
            out.push_back(std::move(line));
        }
    }
    return out;
}

}  // namespace sdr
