#pragma once

#include <string>

#include "seldkit/types.hpp"

namespace seld {

enum class WavSampleFormat { Int16, Int24, Int32, Float32 };

/// Reads a RIFF/WAVE file into a channel-major buffer. Integer encodings are
/// scaled to [-1, 1); 32-bit float data is passed through. PCM 16/24/32-bit
/// integer and 32-bit float are accepted, including the WAVE_FORMAT_EXTENSIBLE
/// wrapping of either. Any channel count is allowed; format checks for a
/// specific pipeline happen downstream.
///
/// Throws FormatError for a malformed container and UnsupportedError for
/// codecs outside the list above.
MultichannelAudio read_wav(const std::string& path);

/// Writes a RIFF/WAVE file. Float samples are clamped to the representable
/// range for integer formats. Throws WriteError on I/O failure.
void write_wav(const MultichannelAudio& audio, const std::string& path,
               WavSampleFormat format = WavSampleFormat::Float32);

}  // namespace seld
