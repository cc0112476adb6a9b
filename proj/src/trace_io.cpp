#include "epfp/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace epfp {

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_coords(std::string& out, const Vector& v) {
  for (int i = 0; i < v.dim(); ++i) {
    out += ',';
    out += format_float(v[i]);
  }
}

int trace_dim(const Trace& trace) {
  return trace.records.empty() ? trace.final_x.dim()
                               : trace.records.front().x.dim();
}

}  // namespace

std::string trace_to_csv(const Trace& trace) {
  int d = trace_dim(trace);
  std::string out = "n";
  for (const char* name : {"x", "u", "y"}) {
    for (int i = 0; i < d; ++i) {
      out += ',';
      out += name;
      out += '_';
      out += std::to_string(i);
    }
  }
  out += ",alpha_n,beta_n,r_n,res_x_Su,res_y_x,res_x_u,res_u_Su,dist_q\n";
  for (const auto& rec : trace.records) {
    out += std::to_string(rec.n);
    append_coords(out, rec.x);
    append_coords(out, rec.u);
    append_coords(out, rec.y);
    for (double v : {rec.alpha, rec.beta, rec.r, rec.res_x_su, rec.res_y_x,
                     rec.res_x_u, rec.res_u_su}) {
      out += ',';
      out += format_float(v);
    }
    out += ',';
    if (rec.dist_q) out += format_float(*rec.dist_q);
    out += '\n';
  }
  return out;
}

std::string trace_to_plotdata_csv(const Trace& trace) {
  std::string out = "n,res_x_Su,res_y_x,res_x_u,res_u_Su,dist_q\n";
  for (const auto& rec : trace.records) {
    out += std::to_string(rec.n);
    for (double v : {rec.res_x_su, rec.res_y_x, rec.res_x_u, rec.res_u_su}) {
      out += ',';
      out += format_float(v);
    }
    out += ',';
    if (rec.dist_q) out += format_float(*rec.dist_q);
    out += '\n';
  }
  return out;
}

std::string compare_to_csv(const std::vector<CompareRow>& rows) {
  std::string out =
      "scheme,ran,status,iterations,final_res_x_Su,final_res_y_x,"
      "final_res_x_u,final_res_u_Su,final_dist_q,error\n";
  for (const auto& row : rows) {
    out += scheme_name(row.scheme);
    out += row.ran ? ",1," : ",0,";
    out += row.ran ? terminal_status_name(row.status) : "";
    out += ',';
    out += std::to_string(row.iterations);
    for (double v : {row.final_res_x_su, row.final_res_y_x, row.final_res_x_u,
                     row.final_res_u_su}) {
      out += ',';
      out += row.ran ? format_float(v) : "";
    }
    out += ',';
    if (row.final_dist) out += format_float(*row.final_dist);
    out += ',';
    // keep the table parseable: quote the error text
    if (!row.error.empty()) {
      std::string quoted = row.error;
      std::string::size_type pos = 0;
      while ((pos = quoted.find('"', pos)) != std::string::npos) {
        quoted.replace(pos, 1, "\"\"");
        pos += 2;
      }
      out += '"' + quoted + '"';
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace epfp
