""" HDF5 file handling shared by the archive modules """
import os as _os

import h5py as _h5py

__all__ = ['FidOrFile', 'hdf_is_open', 'fullpath']


class FidOrFile:
    """
    Open an HDF5 archive by name, or pass an already open h5py.File through,
    so archive functions work on both.

    Parameters
    ----------
    file : str or h5py.File
        Filename or File-object for an open archive

    mode : str
        If opening a file, open with mode. Available: r,r+,w,w-,x,a

    Attributes
    ----------
    is_fid : bool
        Was the input already an open File

    fid : h5py.File
    """
    def __init__(self, file=None, mode='r'):
        self.is_fid = None
        self.fid = None
        if file is not None:
            self.return_fid_from_file(file, mode=mode)

    def return_fid_from_file(self, file, mode='r'):
        """ Open file if given a name, else pass the File through """
        self.is_fid = isinstance(file, _h5py.File)
        if not self.is_fid:
            self.fid = _h5py.File(file, mode=mode)
        else:
            self.fid = file
        return self.fid

    def close_if_file_not_fid(self):
        """ Close the file only if this object opened it """
        if not self.is_fid:
            return self.fid.close()
        return None

    def __enter__(self):
        return self.fid

    def __exit__(self, *exc):
        self.close_if_file_not_fid()
        return False


def hdf_is_open(fid):
    """ Is an HDF5 file open via fid """
    try:
        status = fid.id.valid
    except AttributeError:
        status = fid.fid.valid
    if status == 0:
        return False
    elif status == 1:
        return True
    return None


def fullpath(filename, pth=None):
    """ Join pth and filename (filename alone if no pth) """
    if not pth:
        return filename
    return _os.path.join(pth, filename)
