#include "tvflow/io.hpp"

#include "tvflow/errors.hpp"

#include "atomic_write.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tvflow {

namespace fs = std::filesystem;

namespace {

uint32_t read_u32_le(std::istream& in, const fs::path& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw IoError("truncated file: " + path.string());
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void write_u32_le(std::ostream& out, uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                                static_cast<unsigned char>((v >> 8) & 0xff),
                                static_cast<unsigned char>((v >> 16) & 0xff),
                                static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

float read_f32_le(std::istream& in, const fs::path& path) {
    return std::bit_cast<float>(read_u32_le(in, path));
}

void write_f32_le(std::ostream& out, float v) { write_u32_le(out, std::bit_cast<uint32_t>(v)); }

} // namespace

// Atomic replace: write next to the target, rename into place.
void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place: " + path.string());
    }
}

FlowField read_flo(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());

    const float magic = read_f32_le(in, path);
    if (magic != kFloMagic)
        throw IoError("not a .flo file (wrong magic): " + path.string());

    const auto w = static_cast<int32_t>(read_u32_le(in, path));
    const auto h = static_cast<int32_t>(read_u32_le(in, path));
    if (w < 1 || h < 1 || static_cast<int64_t>(w) * h > (int64_t{1} << 30))
        throw IoError("implausible .flo dimensions in " + path.string());

    FlowField f(w, h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            f.v1(i, j) = read_f32_le(in, path);
            f.v2(i, j) = read_f32_le(in, path);
        }
    }
    return f;
}

void write_flo(const fs::path& path, const FlowField& flow) {
    if (flow.width() < 1 || flow.height() < 1)
        throw IoError("write_flo: empty flow field");

    std::ostringstream os(std::ios::binary);
    write_f32_le(os, kFloMagic);
    write_u32_le(os, static_cast<uint32_t>(flow.width()));
    write_u32_le(os, static_cast<uint32_t>(flow.height()));
    for (int j = 0; j < flow.height(); ++j) {
        for (int i = 0; i < flow.width(); ++i) {
            write_f32_le(os, static_cast<float>(flow.v1(i, j)));
            write_f32_le(os, static_cast<float>(flow.v2(i, j)));
        }
    }
    atomic_write(path, os.str());
}

void write_report_csv(const fs::path& path, const std::vector<ErrorReport>& reports) {
    std::vector<ErrorReport> sorted = reports;
    std::sort(sorted.begin(), sorted.end(), [](const ErrorReport& a, const ErrorReport& b) {
        if (a.model_name != b.model_name) return a.model_name < b.model_name;
        return a.dataset_name < b.dataset_name;
    });

    std::string out = "model,dataset,alpha,alpha1,iterations,aee,ae\n";
    char buf[256];
    for (const ErrorReport& r : sorted) {
        std::snprintf(buf, sizeof buf, "%s,%s,%.6g,%.6g,%d,%.9g,%.9g\n", r.model_name.c_str(),
                      r.dataset_name.c_str(), r.alpha, r.alpha1, r.iterations, r.aee, r.ae);
        out += buf;
    }
    atomic_write(path, out);
}

} // namespace tvflow
