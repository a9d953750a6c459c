#include "tvflow/errors.hpp"
#include "tvflow/io.hpp"

#include "atomic_write.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tvflow {

namespace fs = std::filesystem;

namespace {

constexpr double kLumR = 0.299, kLumG = 0.587, kLumB = 0.114;

// ---- PGM ------------------------------------------------------------------

int pnm_next_int(std::istream& in, const fs::path& path) {
    // Skips whitespace and '#' comment lines between header tokens.
    for (;;) {
        const int c = in.peek();
        if (c == EOF) throw IoError("truncated PGM header: " + path.string());
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int v;
    if (!(in >> v)) throw IoError("bad PGM header token: " + path.string());
    return v;
}

Image read_pgm(std::ifstream& in, const fs::path& path) {
    char p, kind;
    in.get(p);
    in.get(kind);
    const bool binary = kind == '5';
    if (p != 'P' || (kind != '2' && kind != '5'))
        throw IoError("unsupported PNM type (only P2/P5): " + path.string());

    const int w = pnm_next_int(in, path);
    const int h = pnm_next_int(in, path);
    const int maxval = pnm_next_int(in, path);
    if (w < 1 || h < 1) throw IoError("zero-size image: " + path.string());
    if (maxval < 1 || maxval > 65535) throw IoError("bad PGM maxval: " + path.string());

    Image img(w, h);
    const double scale = 1.0 / maxval;
    if (binary) {
        in.get(); // single whitespace after maxval
        const bool wide = maxval > 255;
        std::vector<unsigned char> row(static_cast<std::size_t>(w) * (wide ? 2 : 1));
        for (int j = 0; j < h; ++j) {
            if (!in.read(reinterpret_cast<char*>(row.data()),
                         static_cast<std::streamsize>(row.size())))
                throw IoError("truncated PGM payload: " + path.string());
            for (int i = 0; i < w; ++i) {
                const int v = wide ? (row[2 * i] << 8) | row[2 * i + 1] : row[i];
                img(i, j) = v * scale;
            }
        }
    } else {
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w; ++i) img(i, j) = pnm_next_int(in, path) * scale;
    }
    return img;
}

// ---- PNG ------------------------------------------------------------------

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

Image read_png(const fs::path& path) {
    PngReader r;
    r.fp = std::fopen(path.string().c_str(), "rb");
    if (!r.fp) throw IoError("cannot open: " + path.string());

    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw IoError("libpng init failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) throw IoError("malformed PNG: " + path.string());

    png_init_io(r.png, r.fp);
    png_read_info(r.png, r.info);

    png_uint_32 w, h;
    int depth, color_type;
    png_get_IHDR(r.png, r.info, &w, &h, &depth, &color_type, nullptr, nullptr, nullptr);
    if (w < 1 || h < 1) throw IoError("zero-size image: " + path.string());

    // Normalize every variant to 8/16-bit gray or RGB without alpha.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
    png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    depth = png_get_bit_depth(r.png, r.info);
    color_type = png_get_color_type(r.png, r.info);
    const int channels = png_get_channels(r.png, r.info);
    const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);

    std::vector<unsigned char> data(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 j = 0; j < h; ++j) rows[j] = data.data() + j * rowbytes;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    const double scale = depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
    Image img(static_cast<int>(w), static_cast<int>(h));
    for (png_uint_32 j = 0; j < h; ++j) {
        const unsigned char* row = rows[j];
        for (png_uint_32 i = 0; i < w; ++i) {
            double ch[4] = {0, 0, 0, 0};
            for (int c = 0; c < channels; ++c) {
                const std::size_t k = (static_cast<std::size_t>(i) * channels + c) *
                                      (depth == 16 ? 2 : 1);
                const int v = depth == 16 ? (row[k] << 8) | row[k + 1] : row[k];
                ch[c] = v * scale;
            }
            img(static_cast<int>(i), static_cast<int>(j)) =
                channels >= 3 ? kLumR * ch[0] + kLumG * ch[1] + kLumB * ch[2] : ch[0];
        }
    }
    return img;
}

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

void write_png_bytes(const fs::path& path, int width, int height, int channels,
                     const unsigned char* data) {
    // libpng writes through a memory sink so the final file placement stays
    // atomic.
    std::string bytes;
    {
        PngWriter wr;
        wr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (!wr.png) throw IoError("libpng init failed");
        wr.info = png_create_info_struct(wr.png);
        if (!wr.info) throw IoError("libpng init failed");
        if (setjmp(png_jmpbuf(wr.png))) throw IoError("PNG encode failed: " + path.string());

        png_set_write_fn(
            wr.png, &bytes,
            [](png_structp p, png_bytep d, png_size_t n) {
                auto* s = static_cast<std::string*>(png_get_io_ptr(p));
                s->append(reinterpret_cast<char*>(d), n);
            },
            [](png_structp) {});

        png_set_IHDR(wr.png, wr.info, width, height, 8,
                     channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                     PNG_FILTER_TYPE_DEFAULT);
        png_write_info(wr.png, wr.info);
        std::vector<png_bytep> rows(height);
        for (int j = 0; j < height; ++j)
            rows[j] = const_cast<png_bytep>(data + static_cast<std::size_t>(j) * width * channels);
        png_write_image(wr.png, rows.data());
        png_write_end(wr.png, nullptr);
    }
    atomic_write(path, bytes);
}

bool has_pgm_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm";
}

} // namespace

Image read_image(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    in.seekg(0);
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(in, path);
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') {
        in.close();
        return read_png(path);
    }
    throw IoError("unsupported image format (PGM or PNG expected): " + path.string());
}

void write_image(const fs::path& path, const Image& img) {
    if (img.width() < 1 || img.height() < 1) throw IoError("write_image: empty image");
    const int w = img.width(), h = img.height();

    std::vector<unsigned char> bytes(static_cast<std::size_t>(w) * h);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            bytes[static_cast<std::size_t>(j) * w + i] = static_cast<unsigned char>(
                std::lround(std::clamp(img(i, j), 0.0, 1.0) * 255.0));

    if (has_pgm_extension(path)) {
        std::ostringstream os(std::ios::binary);
        os << "P5\n" << w << " " << h << "\n255\n";
        os.write(reinterpret_cast<const char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size()));
        atomic_write(path, os.str());
    } else {
        write_png_bytes(path, w, h, 1, bytes.data());
    }
}

void write_png_rgb(const fs::path& path, const RgbImage& img) {
    if (img.width < 1 || img.height < 1 ||
        img.rgb.size() != static_cast<std::size_t>(img.width) * img.height * 3)
        throw IoError("write_png_rgb: inconsistent raster");
    write_png_bytes(path, img.width, img.height, 3, img.rgb.data());
}

} // namespace tvflow
