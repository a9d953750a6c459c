#pragma once

#include "tvflow/grid.hpp"
#include "tvflow/metrics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tvflow {

/// Middlebury .flo magic: the float 202021.25 stored little-endian ("PIEH").
inline constexpr float kFloMagic = 202021.25f;

/// Reads a .flo file: magic float, int32 width, int32 height, then
/// width*height interleaved (u, v) float32 pairs, row-major, little-endian.
/// Unknown-flow sentinel values (>= 1e9) pass through verbatim; they act as
/// the mask marker for the error measures. Throws IoError on a wrong magic,
/// truncated payload, or unreadable path.
FlowField read_flo(const std::filesystem::path& path);

/// Writes the same layout (float64 -> float32 narrowing). The file is
/// written to a temporary and renamed into place.
void write_flo(const std::filesystem::path& path, const FlowField& flow);

/// Loads an 8- or 16-bit PGM (P2/P5) or PNG (gray, gray+alpha, palette, RGB,
/// RGBA). Color inputs are reduced to luminance 0.299 R + 0.587 G + 0.114 B;
/// intensities are scaled to [0,1] by the sample maximum of the format.
Image read_image(const std::filesystem::path& path);

/// Writes an 8-bit grayscale image; .pgm gives binary P5, anything else PNG.
/// Values are clamped to [0,1] and quantized to 255 levels. Atomic rename as
/// for write_flo.
void write_image(const std::filesystem::path& path, const Image& img);

/// Interleaved 8-bit RGB raster, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> rgb;
};

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img);

/// Flow-direction color rendering: hue encodes the flow angle, saturation
/// scales with magnitude / max_magnitude, zero flow is white. Magnitudes
/// beyond max_magnitude saturate fully. max_magnitude <= 0 selects the 99th
/// percentile of the known magnitudes. Unknown pixels render black.
RgbImage flow_to_color(const FlowField& v, double max_magnitude = 0.0);

/// CSV with header model,dataset,alpha,alpha1,iterations,aee,ae and one row
/// per report, sorted by (model, dataset). UTF-8, '.' decimal separator.
void write_report_csv(const std::filesystem::path& path,
                      const std::vector<ErrorReport>& reports);

} // namespace tvflow
