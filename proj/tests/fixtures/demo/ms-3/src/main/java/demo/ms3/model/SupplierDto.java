package demo.ms3.model;

import java.util.UUID;
import lombok.Data;

@Data
public class SupplierDto {
    private UUID id;
    private String companyName;
    private String phone;
}
