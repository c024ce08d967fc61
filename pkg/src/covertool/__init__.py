"""Z2-covers of symmetric graphs: lifting, splitting and chains of covers."""
