from rbf_wavelets.cli import ActionCommand


class Command(ActionCommand):
    """
    rbf-wavelets dbt <action> [--config PATH] [--out DIR] [--param KEY=VALUE ...]
    """
    help = 'Discrete Bessel transform: analyze a radial function, synthesize a series, or measure reconstruction error.'
    group = 'dbt'
