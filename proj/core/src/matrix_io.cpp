// SPDX-License-Identifier: Apache-2.0
#include "mcradar/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mcradar/errors.hpp"

namespace mcradar {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

namespace {

std::pair<Eigen::Index, Eigen::Index> read_shape(std::istream &is, const char *what) {
    long long rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows < 1 || cols < 1)
        throw io_error(std::string("malformed ") + what + " header");
    return {static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

} // namespace

void write_matrix(std::ostream &os, const ComplexMatrix &m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << i << ' ' << j << ' ' << format_double(m(i, j).real()) << ' '
               << format_double(m(i, j).imag()) << '\n';
}

ComplexMatrix read_matrix(std::istream &is) {
    const auto [rows, cols] = read_shape(is, "matrix");
    ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
    for (Eigen::Index n = 0; n < rows * cols; ++n) {
        long long i = 0, j = 0;
        double re = 0.0, im = 0.0;
        if (!(is >> i >> j >> re >> im)) throw io_error("truncated matrix entry list");
        if (i < 0 || i >= rows || j < 0 || j >= cols) throw io_error("matrix entry out of range");
        m(i, j) = cdouble(re, im);
    }
    return m;
}

void save_matrix(const std::string &path, const ComplexMatrix &m) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_matrix(os, m);
}

ComplexMatrix load_matrix(const std::string &path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path);
    return read_matrix(is);
}

void write_observation(std::ostream &os, const PartialObservation &obs) {
    os << obs.mask.rows << ' ' << obs.mask.cols << ' ' << obs.mask.size() << '\n';
    os << "delta " << format_double(obs.noise_level) << '\n';
    for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
        const auto &[i, j] = obs.mask.indices[t];
        os << i << ' ' << j << ' ' << format_double(obs.values[t].real()) << ' '
           << format_double(obs.values[t].imag()) << '\n';
    }
}

PartialObservation read_observation(std::istream &is) {
    long long rows = 0, cols = 0, m = 0;
    if (!(is >> rows >> cols >> m) || rows < 1 || cols < 1 || m < 0)
        throw io_error("malformed observation header");
    std::string tag;
    double delta = 0.0;
    if (!(is >> tag >> delta) || tag != "delta")
        throw io_error("observation header missing delta field");
    PartialObservation obs;
    obs.mask.rows = static_cast<Eigen::Index>(rows);
    obs.mask.cols = static_cast<Eigen::Index>(cols);
    obs.noise_level = delta;
    obs.mask.indices.reserve(static_cast<std::size_t>(m));
    obs.values.reserve(static_cast<std::size_t>(m));
    for (long long n = 0; n < m; ++n) {
        long long i = 0, j = 0;
        double re = 0.0, im = 0.0;
        if (!(is >> i >> j >> re >> im)) throw io_error("truncated observation entry list");
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw io_error("observation entry out of range");
        obs.mask.indices.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        obs.values.emplace_back(re, im);
    }
    validate(obs.mask);
    return obs;
}

void save_observation(const std::string &path, const PartialObservation &obs) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_observation(os, obs);
}

PartialObservation load_observation(const std::string &path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path);
    return read_observation(is);
}

void KeyValueWriter::field(const std::string &key, double value) {
    os_ << key << ' ' << format_double(value) << '\n';
}

void KeyValueWriter::field(const std::string &key, int value) { os_ << key << ' ' << value << '\n'; }

void KeyValueWriter::field(const std::string &key, const std::string &value) {
    os_ << key << ' ' << value << '\n';
}

} // namespace mcradar
