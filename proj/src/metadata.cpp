#include "seldkit/metadata.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace seld {
namespace {

long parse_int_field(std::string_view field, int line_no) {
    // trim spaces and a trailing CR
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
        field.remove_prefix(1);
    }
    while (!field.empty() &&
           (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
        field.remove_suffix(1);
    }
    long value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw ParseError("metadata line " + std::to_string(line_no) +
                         ": non-integer field '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::vector<EventAnnotation> parse_metadata_csv(const std::string& text) {
    std::vector<EventAnnotation> events;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;

        long fields[5];
        std::size_t start = 0;
        for (int i = 0; i < 5; ++i) {
            const std::size_t comma = line.find(',', start);
            const bool last_field = (i == 4);
            if (!last_field && comma == std::string::npos) {
                throw ParseError("metadata line " + std::to_string(line_no) +
                                 ": expected 5 comma-separated fields");
            }
            const std::size_t end =
                last_field ? line.size() : comma;
            fields[i] = parse_int_field(
                std::string_view(line).substr(start, end - start), line_no);
            start = end + 1;
        }
        if (line.find(',', start) != std::string::npos ||
            (start <= line.size() &&
             line.find_first_not_of(" \t\r", start) != std::string::npos)) {
            throw ParseError("metadata line " + std::to_string(line_no) +
                             ": expected 5 comma-separated fields");
        }

        try {
            events.push_back(make_annotation(
                static_cast<int>(fields[0]), static_cast<int>(fields[1]),
                static_cast<int>(fields[2]), static_cast<double>(fields[3]),
                static_cast<double>(fields[4])));
        } catch (const RangeError& e) {
            throw RangeError("metadata line " + std::to_string(line_no) + ": " +
                             e.what());
        }
    }
    sort_annotations(events);
    return events;
}

std::vector<EventAnnotation> read_metadata_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open metadata file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_metadata_csv(buf.str());
}

std::string format_metadata_csv(const std::vector<EventAnnotation>& events) {
    std::string out;
    char row[96];
    for (const auto& e : events) {
        std::snprintf(row, sizeof(row), "%d,%d,%d,%ld,%ld\n", e.frame,
                      e.class_index, e.track, std::lround(e.azimuth_deg),
                      std::lround(e.elevation_deg));
        out += row;
    }
    return out;
}

void write_metadata_csv(const std::vector<EventAnnotation>& events,
                        const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw WriteError("cannot open for writing: " + path);
    }
    const std::string text = format_metadata_csv(events);
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) {
        throw WriteError("short write: " + path);
    }
}

}  // namespace seld
