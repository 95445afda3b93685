"""Sensitivity of the constants to quadrature spacing, Picard grid and truncation depth."""
import argparse

from monopole_bvp import connection, picard, pipeline


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, nargs="+", default=[7501, 15001, 30001, 60001])
    args = ap.parse_args()

    base = pipeline.run()
    a, left, right = base.a_star, base.left, base.right

    print("quadrature spacing (Picard grid fixed at n=30001)")
    print(f"{'spacing':>10}{'b*':>24}{'c*':>24}{'d*':>22}")
    for h in (4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4):
        print(f"{h:>10g}{connection.compute_b_star(left, spacing=h):>24.16g}"
              f"{connection.compute_c_star(left, spacing=h):>24.16g}"
              f"{connection.compute_d_star(right, spacing=h):>22.14g}")

    print("\nPicard grid size (quadrature spacing 1e-3)")
    print(f"{'n':>8}{'b*':>24}{'c*':>24}{'residual':>12}{'iters':>7}")
    for n in args.points:
        u, rep = picard.solve_fixed_point(a, n=n)
        lb = picard.extend_left(u, a)
        print(f"{n:>8}{connection.compute_b_star(lb):>24.16g}{connection.compute_c_star(lb):>24.16g}"
              f"{rep.final_residual:>12.2e}{rep.iterations:>7}")

    print("\ntruncation depth")
    for s in (20.0, 25.0, 30.0):
        print(f"  S={s:<5g} b*={connection.compute_b_star(left, s):.16g} "
              f"c*={connection.compute_c_star(left, s):.16g}")
    for s in (10.0, 13.0, 15.0, 20.0, 30.0):
        print(f"  S={s:<5g} d*={connection.compute_d_star(right, s):.14g} "
              f"identity residual={connection.integral_identity_check(right, a, s):.2e}")


if __name__ == "__main__":
    main()
