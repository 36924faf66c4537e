#ifndef CONFDISK_IO_HPP
#define CONFDISK_IO_HPP

#include <string>
#include <vector>

#include "confdisk/measure.hpp"
#include "confdisk/motion.hpp"
#include "confdisk/potential.hpp"

namespace confdisk {

// 17 significant digits, round-trip exact.
std::string format_double(double x);
std::string format_complex(cplx z);  // "re,im"

std::string measure_csv(const DiscreteMeasure& mu);
std::string fitness_csv(const FitnessReport& rep);
std::string scan_csv(const ScanTable& table);
std::string harmonicity_csv(const HarmonicityReport& rep);

void write_file(const std::string& path, const std::string& content);

}  // namespace confdisk

#endif
