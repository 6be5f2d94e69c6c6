""" Update attributes of archived strips and complexes """
import logging as _logging

import h5py as _h5py

from .utils import FidOrFile as _FidOrFile, fullpath as _fullpath

__all__ = ['alter_attr', 'write_attr_dict']

logger = _logging.getLogger(__name__)


def _attr_value(val):
    """ Attributes hold str, int, float or arrays; Fractions are stored as text """
    if isinstance(val, bool):
        return int(val)
    if isinstance(val, (str, int, float)):
        return val
    return str(val)


def alter_attr(dset, attr_key, attr_val, file=None, pth=None, verbose=False,
               must_exist=False):
    """
    Set dset.attrs[attr_key] = attr_val.

    Parameters
    ----------
    dset : str or h5py.Dataset
        Dataset name (file required) or Dataset object

    attr_key : str

    attr_val : str, int, float, Fraction or Surface
        Non-numeric values are written as their text form

    file : str or h5py.File
        Filename or File-object for an open archive

    pth : str
        Path to file

    verbose : bool
        Print old and new values

    must_exist : bool
        The attribute must already exist.
    """
    if file is not None:
        fof = _FidOrFile(_fullpath(file, pth) if isinstance(file, str) else file, mode='r+')
        fid = fof.fid
        if isinstance(dset, str):
            dset_object = fid[dset]
        elif isinstance(dset, _h5py.Dataset):
            if isinstance(file, str):
                raise TypeError('Cannot provide h5py.Dataset dset and a filename str.')
            dset_object = dset
        else:
            raise TypeError('dset unknown')
    else:
        fof = None
        if isinstance(dset, _h5py.Dataset):
            dset_object = dset
        else:
            raise TypeError('With no file or fid given, dset must be an h5py.Dataset object')

    if must_exist and dset_object.attrs.get(attr_key) is None:
        err_str1 = 'Attribute {} does not exist and '.format(attr_key)
        raise KeyError(err_str1 + 'must_exist set to True')

    attr_val = _attr_value(attr_val)
    if verbose:
        if dset_object.attrs.get(attr_key) is None:
            print('Attribute {} does not exist. Creating.'.format(attr_key))
        else:
            print('Dataset[{}] = {} -> {}'.format(attr_key, dset_object.attrs[attr_key], attr_val))
    logger.debug('%s.attrs[%s] = %r', dset_object.name, attr_key, attr_val)
    dset_object.attrs[attr_key] = attr_val

    if fof is not None:
        fof.close_if_file_not_fid()


def write_attr_dict(dset, attr_dict, fid=None, sort_attrs=False, verbose=False):
    """
    Write a whole dictionary of attributes to a dataset.

    Parameters
    ----------
    dset : str or h5py.Dataset
        If a name, fid must be given

    attr_dict : dict

    fid : h5py.File

    sort_attrs : bool
        Write keys in alphabetical order
    """
    keys = list(attr_dict)
    if sort_attrs:
        keys.sort()
    for key in keys:
        alter_attr(dset, key, attr_dict[key], file=fid, verbose=verbose, must_exist=False)
    return True
