#pragma once

#include <stdexcept>
#include <string>

namespace photostamp {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Stamped output must stay lossless; requesting a lossy container is an error.
class LossyFormatRequested : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ImageTooSmall : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class EmptyCameraId : public Error {
public:
    using Error::Error;
};

class RegionOutOfBounds : public Error {
public:
    using Error::Error;
};

class PhotoIdCollision : public Error {
public:
    using Error::Error;
};

class StorageError : public Error {
public:
    using Error::Error;
};

class MalformedImage : public Error {
public:
    using Error::Error;
};

class MissingSecret : public Error {
public:
    using Error::Error;
};

} // namespace photostamp
