#include "wt1/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "wt1/classifier.hpp"

namespace wt1::cli {

namespace fs = std::filesystem;

namespace {

class FileError : public Error {
 public:
  using Error::Error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FileError("cannot read " + path);
  ss << f.rdbuf();
  return ss.str();
}

void write_atomically(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw FileError("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw FileError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw FileError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-") {
    out << text;
  } else {
    write_atomically(output, text);
  }
}

int exit_for(Verdict v) { return v == Verdict::Inconclusive ? kInconclusive : kDefinitive; }

struct Options {
  std::string file;
  std::string output;
  long prime_budget = 0;
  bool strict = false;
  unsigned jobs = 0;
  long D = 0;
  long norm = 1;
  long char_index = 1;
  long terms = 0;
  bool list = false;
  long N = 1;
};

ClassifierConfig config_of(const Options& o) {
  ClassifierConfig c;
  if (o.prime_budget > 0) c.prime_budget = o.prime_budget;
  return c;
}

// parse, check Hecke relations, classify
Certificate classify_text(const std::string& text, const Options& o, std::ostream& err, const std::string& label) {
  const NewformRecord r = parse_record(text);
  const HeckeReport report = validate_hecke(r);
  for (const auto& w : report.warnings) err << label << ": warning: " << w.relation << '\n';
  if (o.strict && !report.warnings.empty()) throw RefusalError("bad-prime warnings are errors under --strict");
  return classify(r, config_of(o));
}

int cmd_classify(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::string text = read_input(o.file, in);
  const Certificate c = classify_text(text, o, err, o.file);
  emit(serialize(c), o.output, out);
  return exit_for(c.verdict);
}

struct BatchRow {
  std::string name;
  long level = 0;
  long character_order = 0;
  std::string verdict = "ERROR";
  std::string message;
  std::string warnings;
  int code = kError;
};

int severity(int code) { return code == kDefinitive ? 0 : (code == kInconclusive ? 1 : 2); }

int cmd_batch(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir(o.file);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw FileError("not a directory: " + o.file);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wt1") files.push_back(entry.path());
  }
  if (ec) throw FileError("cannot list " + o.file + ": " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<BatchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      BatchRow& row = rows[i];
      std::ostringstream sink;
      row.name = files[i].filename().string();
      try {
        const std::string text = read_input(files[i].string(), std::cin);
        const NewformRecord r = parse_record(text);
        row.level = r.level;
        row.character_order = r.character.order();
        const Certificate c = classify_text(text, o, sink, row.name);
        fs::path cert = files[i];
        cert += ".cert";
        write_atomically(cert, serialize(c));
        row.verdict = to_string(c.verdict);
        row.code = exit_for(c.verdict);
      } catch (const std::exception& e) {
        row.message = e.what();
        row.code = kError;
      }
      row.warnings = sink.str();
    }
  };
  unsigned jobs = o.jobs > 0 ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(files.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t width = 4;
  for (const auto& row : rows) width = std::max(width, row.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "file" << "  " << std::right << std::setw(8) << "level"
      << "  " << std::setw(9) << "chi_order" << "  verdict\n";
  int code = kDefinitive;
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << row.name << "  " << std::right << std::setw(8)
        << row.level << "  " << std::setw(9) << row.character_order << "  " << row.verdict << '\n';
    err << row.warnings;
    if (!row.message.empty()) err << row.name << ": error: " << row.message << '\n';
    if (severity(row.code) > severity(code)) code = row.code;
  }
  return code;
}

std::string describe(const HeckeCharacter& psi) {
  const QuadIdeal& f = psi.group->modulus();
  std::ostringstream s;
  s << "conductor=" << f.content << ',' << f.a << ',' << f.b << " structure=";
  const auto& dims = psi.group->structure();
  if (dims.empty()) s << '1';
  for (std::size_t i = 0; i < dims.size(); ++i) s << (i ? "x" : "") << dims[i];
  s << " order=" << psi.order << " exponents=";
  if (psi.exponents.empty()) s << '-';
  for (std::size_t i = 0; i < psi.exponents.size(); ++i) s << (i ? "," : "") << psi.exponents[i];
  return s.str();
}

int cmd_gen_dihedral(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<HeckeCharacter> chars;
  for (const auto& f : ideals_of_norm(o.D, o.norm)) {
    for (auto& psi : enumerate_hecke_characters(o.D, f)) chars.push_back(std::move(psi));
  }
  if (o.list) {
    std::ostringstream s;
    for (std::size_t i = 0; i < chars.size(); ++i) s << i + 1 << ' ' << describe(chars[i]) << '\n';
    emit(s.str(), o.output, out);
    return kDefinitive;
  }
  if (chars.empty()) {
    err << "error: no Hecke characters of conductor norm " << o.norm << " with psi != psi o conj for D = " << o.D
        << '\n';
    return kError;
  }
  if (o.char_index < 1 || o.char_index > static_cast<long>(chars.size())) {
    err << "error: --char must lie in 1.." << chars.size() << '\n';
    return kUsage;
  }
  const HeckeCharacter& psi = chars[static_cast<std::size_t>(o.char_index - 1)];
  const long terms = o.terms > 0 ? o.terms : sturm_bound(-o.D * o.norm).bound;
  emit(serialize(dihedral_record(psi, terms)), o.output, out);
  return kDefinitive;
}

int cmd_validate(const Options& o, std::istream& in, std::ostream& out) {
  const NewformRecord r = parse_record(read_input(o.file, in));
  const HeckeReport report = validate_hecke(r);
  std::ostringstream s;
  s << "level " << r.level << " character_order " << r.character.order() << " coefficients " << r.precision()
    << '\n';
  for (const auto& v : report.violations) s << "violation n=" << v.n << ' ' << v.relation << '\n';
  for (const auto& w : report.warnings) s << "warning n=" << w.n << ' ' << w.relation << '\n';
  const long bound = sturm_bound(r.level).bound;
  if (r.precision() < bound) s << "warning precision below the Sturm bound " << bound << '\n';
  const bool ok = report.ok() && !(o.strict && !report.warnings.empty());
  s << (ok ? "ok" : "invalid") << '\n';
  emit(s.str(), o.output, out);
  return ok ? kDefinitive : kError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projective image classification of weight one newforms", "wt1"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto* classify_cmd = app.add_subcommand("classify", "Classify one record and print its certificate");
  classify_cmd->add_option("file", o.file, "Record file, or - for standard input")->required();
  classify_cmd->add_option("--prime-budget", o.prime_budget, "Largest prime used in witness searches")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("-o,--output", o.output, "Write the certificate here instead of standard output");
  classify_cmd->add_flag("--strict", o.strict, "Treat bad-prime warnings as errors");

  auto* batch_cmd = app.add_subcommand("batch", "Classify every .wt1 file in a directory");
  batch_cmd->add_option("dir", o.file, "Directory of records")->required();
  batch_cmd->add_option("--prime-budget", o.prime_budget, "Largest prime used in witness searches")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("-j,--jobs", o.jobs, "Worker threads (default: hardware concurrency)");
  batch_cmd->add_flag("--strict", o.strict, "Treat bad-prime warnings as errors");

  auto* gen_cmd = app.add_subcommand("gen-dihedral", "Theta series of a Hecke character as a record");
  gen_cmd->add_option("D", o.D, "Negative fundamental discriminant")->required();
  gen_cmd->add_option("norm", o.norm, "Norm of the conductor")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--char", o.char_index, "1-based index into the character list (see --list)");
  gen_cmd->add_option("--terms", o.terms, "Number of coefficients (default: the Sturm bound)");
  gen_cmd->add_flag("--list", o.list, "List the characters instead");
  gen_cmd->add_option("-o,--output", o.output, "Output file");

  auto* validate_cmd = app.add_subcommand("validate", "Check the format and the Hecke relations of a record");
  validate_cmd->add_option("file", o.file, "Record file, or - for standard input")->required();
  validate_cmd->add_flag("--strict", o.strict, "Treat bad-prime warnings as errors");
  validate_cmd->add_option("-o,--output", o.output, "Output file");

  auto* sturm_cmd = app.add_subcommand("sturm", "Print the index of Gamma_0(N) and the Sturm bound");
  sturm_cmd->add_option("N", o.N, "Level")->required()->check(CLI::PositiveNumber);

  auto* discs_cmd = app.add_subcommand("discs", "Fundamental discriminants supported on the primes of N");
  discs_cmd->add_option("N", o.N, "Level")->required()->check(CLI::PositiveNumber);

  // CLI11 parses in reverse order
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(o, in, out, err);
    if (*batch_cmd) return cmd_batch(o, out, err);
    if (*gen_cmd) return cmd_gen_dihedral(o, out, err);
    if (*validate_cmd) return cmd_validate(o, in, out);
    if (*sturm_cmd) {
      const SturmBound s = sturm_bound(o.N);
      out << "index " << s.index << " bound " << s.bound << '\n';
      return kDefinitive;
    }
    if (*discs_cmd) {
      const auto discs = enumerate_fundamental_discriminants(o.N);
      for (std::size_t i = 0; i < discs.size(); ++i) out << (i ? " " : "") << discs[i].value;
      out << '\n';
      return kDefinitive;
    }
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kFileError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kUsage;
}

}  // namespace wt1::cli
