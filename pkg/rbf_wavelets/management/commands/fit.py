from rbf_wavelets.cli import ActionCommand


class Command(ActionCommand):
    """
    rbf-wavelets fit <action> [--config PATH] [--out DIR] [--param KEY=VALUE ...]
    """
    help = 'Fit classic RBF expansions or convection-diffusion kernels to sampled data.'
    group = 'fit'
