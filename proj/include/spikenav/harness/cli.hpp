#ifndef SPIKENAV_HARNESS_CLI_HPP_
#define SPIKENAV_HARNESS_CLI_HPP_

namespace spikenav::harness {

// Subcommands train, eval, energy, export-traj. Returns 0 on success and
// nonzero on any error (message on stderr).
int cli_main(int argc, const char* const* argv);

}  // namespace spikenav::harness

#endif  // SPIKENAV_HARNESS_CLI_HPP_
