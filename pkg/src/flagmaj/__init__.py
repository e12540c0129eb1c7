"""Flag-major index, Coxeter length and inverse descent classes of B_n."""
