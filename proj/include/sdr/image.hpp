#ifndef SDR_IMAGE_HPP
#define SDR_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sdr/geometry.hpp"

namespace sdr {

/// 8-bit luminance raster, row-major. Sobel needs at least 3x3.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y) const { return data[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[std::size_t(y) * width + x]; }
};

/// Per-pixel gradient magnitude. The outermost ring is always zero
/// (the kernel is not applied there).
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> mag;

    double at(int x, int y) const { return mag[std::size_t(y) * width + x]; }
};

/// Binary edge raster. Border ring is always false.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;  // 0 or 1

    bool at(int x, int y) const { return mask[std::size_t(y) * width + x] != 0; }
    std::size_t true_count() const;
};

enum class ImageFormat { autodetect, pgm, png };

/// ITU-R BT.601 luma, rounded to nearest.
std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Loads a PGM (P2/P5, maxval <= 255) or an 8-bit grayscale/RGB PNG.
/// With autodetect the format is taken from the file's magic bytes.
GrayImage load_image(const std::filesystem::path& path,
                     ImageFormat format = ImageFormat::autodetect);

/// Same as load_image but over an in-memory byte buffer.
GrayImage decode_image(const std::string& bytes, ImageFormat format = ImageFormat::autodetect);

/// Writes binary (P5) or ASCII (P2) PGM.
void write_pgm(const std::filesystem::path& path, const GrayImage& img, bool binary = true);

/// Gradient magnitude sqrt(Gx^2 + Gy^2) from the canonical 3x3 Sobel pair.
GradientField sobel_magnitude(const GrayImage& img);

/// mask = magnitude >= threshold * max(magnitude), threshold in (0,1].
/// An all-zero field yields an all-false map.
EdgeMap threshold_edges(const GradientField& grad, double threshold);

/// Absolute-value variant (config override): mask = magnitude >= threshold.
EdgeMap threshold_edges_absolute(const GradientField& grad, double threshold);

/// Greedy 8-neighbor chaining into ordered polylines. Chains start at the
/// unvisited true pixel with smallest (y,x); each step takes the unvisited
/// true 4-neighbor with smallest (y,x), falling back to the unvisited true
/// diagonal neighbor with smallest (y,x). A chain is closed if its endpoints
/// are mutual 8-neighbors and it has at least 3 points. Every true pixel
/// ends up in exactly one polyline.
std::vector<Polyline> trace_contours(const EdgeMap& edges);

}  // namespace sdr

#endif
