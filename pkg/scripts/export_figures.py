"""Write the profile, phase-curve and radial datasets as CSV files."""
import argparse
import pathlib

from monopole_bvp.cli import main as cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="figures")
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = {
        "profile.csv": ["profile", "--range", "-25", "10", "--step", "0.01"],
        "pz.csv": ["pz", "--samples", "401"],
        "radial.csv": ["radial", "--r0", "1"],
        "constants.json": ["constants"],
    }
    for name, argv in jobs.items():
        code = cli(argv + ["--out", str(out / name)])
        print(f"{name}: exit {code}")
        if code:
            raise SystemExit(code)


if __name__ == "__main__":
    main()
