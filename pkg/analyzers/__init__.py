# Numerical radius and bound analyzers
