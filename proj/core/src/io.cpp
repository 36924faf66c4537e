#include "confdisk/io.hpp"

#include <cstdio>
#include <fstream>

namespace confdisk {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(cplx z) { return format_double(z.real()) + "," + format_double(z.imag()); }

std::string measure_csv(const DiscreteMeasure& mu) {
    std::string out = "param,point_re,point_im,weight,cumulative,tag\n";
    double cum = 0;
    for (const auto& a : mu.atoms) {
        cum += a.weight;
        out += format_double(a.param) + "," + format_double(a.z.real()) + "," +
               format_double(a.z.imag()) + "," + format_double(a.weight) + "," +
               format_double(cum) + "," + access_tag_name(a.tag) + "\n";
    }
    return out;
}

std::string fitness_csv(const FitnessReport& rep) {
    std::string out = "t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent\n";
    for (const auto& r : rep.rows) {
        std::string verdicts = verdict_name(r.v_iii) + "|" + verdict_name(r.v_iv) + "|" +
                               verdict_name(r.v_v) + "|" + verdict_name(r.v_vi);
        out += format_double(r.t.real()) + "," + format_double(r.t.imag()) + "," +
               format_double(r.dev_iii) + "," + format_double(r.dev_iv) + "," +
               format_double(r.dev_v) + "," + format_double(r.dev_vi) + "," + verdicts + "," +
               (r.consistent ? "true" : "false") + "\n";
    }
    return out;
}

std::string scan_csv(const ScanTable& table) {
    std::string out = "t_re,t_im,h,e_omega,ineq_ok\n";
    for (const auto& r : table.rows)
        out += format_double(r.t.real()) + "," + format_double(r.t.imag()) + "," +
               format_double(r.h) + "," + format_double(r.e_omega) + "," +
               (r.ineq_ok ? "true" : "false") + "\n";
    return out;
}

std::string harmonicity_csv(const HarmonicityReport& rep) {
    std::string out = "center_re,center_im,radius,residual\n";
    for (const auto& e : rep.entries)
        out += format_double(e.center.real()) + "," + format_double(e.center.imag()) + "," +
               format_double(e.radius) + "," + format_double(e.residual) + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace confdisk
