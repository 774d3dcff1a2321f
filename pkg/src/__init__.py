# Induced tree hunter
