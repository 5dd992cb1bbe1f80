#include "photostamp/imageio.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <csetjmp>
#include <jpeglib.h>
#include <png.h>

#include "photostamp/errors.hpp"

namespace photostamp {

namespace {

struct MemReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (r->pos + len > r->size) png_error(png, "unexpected end of PNG stream");
    std::memcpy(out, r->data + r->pos, len);
    r->pos += len;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + len);
}

void png_mem_flush(png_structp) {}

RgbImage decode_png_bytes(std::span<const std::uint8_t> bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DecodeError("libpng: failed to create read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DecodeError("libpng: failed to create info struct");
    }

    RgbImage img;
    std::vector<png_bytep> row_ptrs;
    std::vector<std::uint8_t> raw;
    MemReader reader{bytes.data(), bytes.size(), 0};

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("libpng: corrupt or truncated PNG");
    }

    png_set_read_fn(png, &reader, png_mem_read);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize everything to 8-bit RGBA, then flatten alpha over black.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_filler(png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(png, info);

    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    raw.resize(static_cast<std::size_t>(w) * h * 4);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) row_ptrs[y] = raw.data() + static_cast<std::size_t>(y) * w * 4;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, info);

    png_textp texts = nullptr;
    int ntext = 0;
    png_get_text(png, info, &texts, &ntext);
    for (int i = 0; i < ntext; ++i) {
        if (texts[i].key && texts[i].text) img.metadata[texts[i].key] = texts[i].text;
    }

    img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
    for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
        const unsigned a = raw[4 * i + 3];
        img.pixels[3 * i + 0] = static_cast<std::uint8_t>(raw[4 * i + 0] * a / 255);
        img.pixels[3 * i + 1] = static_cast<std::uint8_t>(raw[4 * i + 1] * a / 255);
        img.pixels[3 * i + 2] = static_cast<std::uint8_t>(raw[4 * i + 2] * a / 255);
    }

    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

#pragma pack(push, 1)
struct BmpFileHeader {
    std::uint16_t type;
    std::uint32_t size;
    std::uint16_t res1;
    std::uint16_t res2;
    std::uint32_t offset;
};
struct BmpInfoHeader {
    std::uint32_t header_size;
    std::int32_t width;
    std::int32_t height;
    std::uint16_t planes;
    std::uint16_t bpp;
    std::uint32_t compression;
    std::uint32_t image_size;
    std::int32_t xppm;
    std::int32_t yppm;
    std::uint32_t colors_used;
    std::uint32_t colors_important;
};
#pragma pack(pop)

RgbImage decode_bmp_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < sizeof(BmpFileHeader) + sizeof(BmpInfoHeader))
        throw DecodeError("BMP: file too short");
    BmpFileHeader fh;
    BmpInfoHeader ih;
    std::memcpy(&fh, bytes.data(), sizeof(fh));
    std::memcpy(&ih, bytes.data() + sizeof(fh), sizeof(ih));
    if (fh.type != 0x4D42) throw DecodeError("BMP: bad signature");
    if (ih.header_size < 40) throw DecodeError("BMP: unsupported header");
    if (ih.bpp != 24 || ih.compression != 0)
        throw DecodeError("BMP: only uncompressed 24-bit supported");
    if (ih.width < 1 || ih.height == 0) throw DecodeError("BMP: bad dimensions");

    const bool top_down = ih.height < 0;
    const int w = ih.width;
    const int h = top_down ? -ih.height : ih.height;
    const std::size_t stride = (static_cast<std::size_t>(w) * 3 + 3) & ~std::size_t{3};
    if (fh.offset + stride * h > bytes.size()) throw DecodeError("BMP: truncated pixel data");

    RgbImage img(w, h);
    for (int y = 0; y < h; ++y) {
        const int src_y = top_down ? y : h - 1 - y;
        const std::uint8_t* row = bytes.data() + fh.offset + stride * src_y;
        for (int x = 0; x < w; ++x) {
            img.at(x, y, ChannelId::Blue) = row[3 * x + 0];
            img.at(x, y, ChannelId::Green) = row[3 * x + 1];
            img.at(x, y, ChannelId::Red) = row[3 * x + 2];
        }
    }
    return img;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

} // namespace

ImageFormat sniff_format(std::span<const std::uint8_t> bytes) {
    static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0) return ImageFormat::Png;
    if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') return ImageFormat::Bmp;
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) return ImageFormat::Jpeg;
    throw UnsupportedFormat("unrecognized image container (expected PNG, BMP or JPEG)");
}

RgbImage decode_image(std::span<const std::uint8_t> bytes) {
    switch (sniff_format(bytes)) {
    case ImageFormat::Png: return decode_png_bytes(bytes);
    case ImageFormat::Bmp: return decode_bmp_bytes(bytes);
    case ImageFormat::Jpeg: return decode_jpeg(bytes);
    }
    throw UnsupportedFormat("unrecognized image container");
}

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count() * 3)
        throw Error("encode_png: invalid image");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("libpng: failed to create write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("libpng: failed to create info struct");
    }

    std::vector<std::uint8_t> out;
    std::vector<png_text> texts;
    std::vector<std::string> keys, values; // keep text storage alive across the write
    keys.reserve(img.metadata.size());
    values.reserve(img.metadata.size());

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("libpng: write failed");
    }

    png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    for (const auto& [k, v] : img.metadata) {
        keys.push_back(k);
        values.push_back(v);
        png_text t{};
        t.compression = PNG_TEXT_COMPRESSION_NONE;
        t.key = keys.back().data();
        t.text = values.back().data();
        t.text_length = values.back().size();
        texts.push_back(t);
    }
    if (!texts.empty()) png_set_text(png, info, texts.data(), static_cast<int>(texts.size()));

    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(png, const_cast<png_bytep>(img.pixels.data() + static_cast<std::size_t>(y) * img.width * 3));
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

std::vector<std::uint8_t> encode_bmp(const RgbImage& img) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count() * 3)
        throw Error("encode_bmp: invalid image");
    const std::size_t stride = (static_cast<std::size_t>(img.width) * 3 + 3) & ~std::size_t{3};
    const std::size_t data_size = stride * img.height;

    BmpFileHeader fh{};
    BmpInfoHeader ih{};
    fh.type = 0x4D42;
    fh.offset = sizeof(fh) + sizeof(ih);
    fh.size = static_cast<std::uint32_t>(fh.offset + data_size);
    ih.header_size = 40;
    ih.width = img.width;
    ih.height = img.height; // bottom-up
    ih.planes = 1;
    ih.bpp = 24;
    ih.image_size = static_cast<std::uint32_t>(data_size);

    std::vector<std::uint8_t> out(fh.offset + data_size, 0);
    std::memcpy(out.data(), &fh, sizeof(fh));
    std::memcpy(out.data() + sizeof(fh), &ih, sizeof(ih));
    for (int y = 0; y < img.height; ++y) {
        std::uint8_t* row = out.data() + fh.offset + stride * (img.height - 1 - y);
        for (int x = 0; x < img.width; ++x) {
            row[3 * x + 0] = img.at(x, y, ChannelId::Blue);
            row[3 * x + 1] = img.at(x, y, ChannelId::Green);
            row[3 * x + 2] = img.at(x, y, ChannelId::Red);
        }
    }
    return out;
}

std::vector<std::uint8_t> encode_jpeg(const RgbImage& img, int quality) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count() * 3)
        throw Error("encode_jpeg: invalid image");

    jpeg_compress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;

    unsigned char* buffer = nullptr;
    unsigned long buffer_size = 0;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        if (buffer) free(buffer);
        throw Error(std::string("libjpeg: encode failed: ") + err.message);
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(img.pixels.data() +
                                            static_cast<std::size_t>(cinfo.next_scanline) * img.width * 3);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<std::uint8_t> out(buffer, buffer + buffer_size);
    free(buffer);
    return out;
}

RgbImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw DecodeError(std::string("libjpeg: decode failed: ") + err.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RgbImage img(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * img.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

RgbImage load_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        return decode_image(bytes);
    } catch (const UnsupportedFormat& e) {
        throw UnsupportedFormat(path.string() + ": " + e.what());
    } catch (const DecodeError& e) {
        throw DecodeError(path.string() + ": " + e.what());
    }
}

void save_image(const RgbImage& img, const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".jpg" || ext == ".jpeg")
        throw LossyFormatRequested("refusing lossy output " + path.string() +
                                   ": one recompression would destroy the embedded identifier");
    std::vector<std::uint8_t> bytes;
    if (ext == ".png")
        bytes = encode_png(img);
    else if (ext == ".bmp")
        bytes = encode_bmp(img);
    else
        throw UnsupportedFormat("unsupported output extension " + ext + " (use .png or .bmp)");
    write_file(path, bytes);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read error on " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write error on " + path.string());
}

} // namespace photostamp
